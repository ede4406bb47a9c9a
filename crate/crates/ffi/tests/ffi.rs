use std::ffi::{CStr, CString};
use std::ptr;

use hitree_ffi::*;

fn petersen() -> *mut HitGraph {
    let mut flat = Vec::new();
    for i in 0..5usize {
        flat.extend([i, (i + 1) % 5, i, i + 5, 5 + i, 5 + (i + 2) % 5]);
    }
    let mut g = ptr::null_mut();
    let st = unsafe { hit_graph_new(10, flat.as_ptr(), flat.len() / 2, &mut g) };
    assert_eq!(st, HitStatus::Ok);
    g
}

fn last_error() -> String {
    let p = hit_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn good_tree_round_trip() {
    let g = petersen();
    unsafe {
        assert_eq!((hit_graph_vertex_count(g), hit_graph_edge_count(g)), (10, 15));
        let mut t = ptr::null_mut();
        assert_eq!(hit_build_good_tree(g, &mut t), HitStatus::Ok);
        assert_eq!(hit_tree_edge_count(t), 9);
        let mut good = false;
        assert_eq!(hit_tree_is_good(g, t, &mut good), HitStatus::Ok);
        assert!(good);
        let mut buf = vec![0usize; 18];
        assert_eq!(hit_tree_edges(t, buf.as_mut_ptr(), 4), HitStatus::BufferTooSmall);
        assert!(last_error().contains("need 18"));
        assert_eq!(hit_tree_edges(t, buf.as_mut_ptr(), buf.len()), HitStatus::Ok);
        let mut copy = ptr::null_mut();
        assert_eq!(hit_tree_new(g, buf.as_ptr(), 9, &mut copy), HitStatus::Ok);
        hit_tree_free(copy);
        hit_tree_free(t);
        hit_graph_free(g);
    }
}

#[test]
fn errors_and_nulls() {
    unsafe {
        let mut g = ptr::null_mut();
        let flat = [0usize, 0];
        assert_eq!(hit_graph_new(2, flat.as_ptr(), 1, &mut g), HitStatus::InvalidArgument);
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(hit_graph_new(2, ptr::null(), 1, &mut g), HitStatus::NullPointer);
        let mut t = ptr::null_mut();
        assert_eq!(hit_build_good_tree(ptr::null(), &mut t), HitStatus::NullPointer);
        hit_graph_free(ptr::null_mut());
        hit_tree_free(ptr::null_mut());
        hit_string_free(ptr::null_mut());
        assert_eq!(hit_graph_vertex_count(ptr::null()), 0);
    }
}

#[test]
fn k4_has_no_star_cover() {
    unsafe {
        let text = CString::new("C~").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(hit_graph_from_graph6(text.as_ptr(), &mut g), HitStatus::Ok);
        assert_eq!(hit_graph_edge_count(g), 6);
        let mut t = ptr::null_mut();
        assert_eq!(hit_build_no_adjacent_deg2(g, &mut t), HitStatus::NotFound);
        assert!(last_error().contains("no star cover found"));
        let mut s = ptr::null_mut();
        assert_eq!(hit_count_spanning_trees(g, &mut s), HitStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "16");
        hit_string_free(s);
        hit_graph_free(g);
    }
}

#[test]
fn structure_as_json() {
    let g = petersen();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(hit_find_structure(g, ptr::null(), 0, &mut s), HitStatus::Ok);
        let json = CStr::from_ptr(s).to_str().unwrap().to_owned();
        assert!(json.contains("\"variant\":\"cycle\""), "{json}");
        hit_string_free(s);
        hit_graph_free(g);
    }
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hitree.h")).unwrap();
    for name in ["hit_graph_new", "hit_build_good_tree", "hit_last_error", "HIT_STATUS_NOT_FOUND", "typedef struct HitGraph HitGraph"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

// Compiles a small C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    // `cargo test` leaves the fresh archive next to the test binary.
    let lib = exe.parent().unwrap().join("libhitree_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = tempfile::TempDir::new().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "hitree.h"
int main(void) {
    HitGraph *g = NULL;
    if (hit_graph_from_graph6("IheA@GUAo", &g) != HIT_STATUS_OK) {
        fprintf(stderr, "%s\n", hit_last_error());
        return 1;
    }
    HitTree *t = NULL;
    if (hit_build_good_tree(g, &t) != HIT_STATUS_OK) return 2;
    bool good = false;
    if (hit_tree_is_good(g, t, &good) != HIT_STATUS_OK || !good) return 3;
    size_t edges = hit_tree_edge_count(t);
    hit_tree_free(t);
    hit_graph_free(g);
    printf("%zu\n", edges);
    return edges == 9 ? 0 : 4;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let built = std::process::Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status();
    match built {
        Ok(s) => assert!(s.success(), "C compile failed"),
        Err(e) => {
            eprintln!("skipping: no C compiler ({e})");
            return;
        }
    }
    let out = std::process::Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "9");
}
