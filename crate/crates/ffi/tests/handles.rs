use std::ffi::{CStr, CString};
use std::ptr;

use commcent_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(cc_last_error()) }.to_string_lossy().into_owned()
}

fn build(family: &str) -> (CcStatus, *mut CcGroup) {
    let f = CString::new(family).unwrap();
    let mut g = ptr::null_mut();
    let status = unsafe { cc_group_build(f.as_ptr(), 20_000, &mut g) };
    (status, g)
}

#[test]
fn group_round_trip() {
    let (status, g) = build("heis:q=4");
    assert_eq!(status, CcStatus::Ok);
    unsafe {
        assert_eq!(cc_group_order(g), 64);
        let mut out = 0usize;
        assert_eq!(cc_group_center_size(g, &mut out), CcStatus::Ok);
        assert_eq!(out, 4);
        assert_eq!(cc_group_cent_count(g, &mut out), CcStatus::Ok);
        assert_eq!(out, 10);
        assert_eq!(cc_group_class_count(g, &mut out), CcStatus::Ok);
        assert_eq!(out, 22);
        assert_eq!(cc_group_element_order(g, 1, &mut out), CcStatus::Ok);
        assert_eq!(out, 4);
        let mut p = 0usize;
        assert_eq!(cc_group_power(g, 1, 4, &mut p), CcStatus::Ok);
        assert_eq!(p, 0);
        assert_eq!(cc_group_mul(g, 1, 3, &mut p), CcStatus::Ok);
        assert_eq!(cc_group_mul(g, 64, 0, &mut p), CcStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));
        cc_group_free(g);
    }
}

#[test]
fn errors_map_to_status_codes() {
    assert_eq!(build("heis:q=x").0, CcStatus::InvalidArgument);
    assert_eq!(build("ce:p=3,r=1,m=9,a=1,b=0,g=1").0, CcStatus::Inconsistent);
    assert!(last_error().contains("associativity"));
    assert_eq!(build("heis:q=4").0, CcStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe {
        let mut out = 0usize;
        assert_eq!(cc_group_cent_count(ptr::null(), &mut out), CcStatus::NullPointer);
        assert_eq!(cc_group_build(ptr::null(), 10, &mut ptr::null_mut()), CcStatus::NullPointer);
        let mut spec = ptr::null_mut();
        assert_eq!(cc_join_spec_m2(2, 4, &mut spec), CcStatus::InvalidArgument);
        assert!(spec.is_null());
        cc_group_free(ptr::null_mut());
        cc_string_free(ptr::null_mut());
    }
}

#[test]
fn graphs_and_joins() {
    let (_, g) = build("heis:q=9");
    unsafe {
        let mut graph = ptr::null_mut();
        assert_eq!(cc_ccc_graph(g, &mut graph), CcStatus::Ok);
        assert_eq!(cc_graph_vertex_count(graph), 96);
        let mut spec = ptr::null_mut();
        assert_eq!(cc_join_spec_m1(3, 9, &mut spec), CcStatus::Ok);
        let mut ok = false;
        assert_eq!(cc_graph_verify_join(graph, spec, 0, &mut ok), CcStatus::Ok);
        assert!(ok);

        let mut realized = ptr::null_mut();
        assert_eq!(cc_join_realize(spec, &mut realized), CcStatus::Ok);
        assert_eq!(cc_graph_edge_count(realized), cc_graph_edge_count(graph));
        let mut edge = false;
        assert_eq!(cc_graph_has_edge(realized, 0, 1, &mut edge), CcStatus::Ok);
        assert!(edge);
        assert_eq!(cc_graph_has_edge(realized, 0, 96, &mut edge), CcStatus::InvalidArgument);

        let mut json = ptr::null_mut();
        assert_eq!(cc_join_spec_to_json(spec, &mut json), CcStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["name"], "M1");
        cc_string_free(json);

        let name = CString::new("ccc").unwrap();
        let mut dot = ptr::null_mut();
        assert_eq!(cc_graph_to_dot(graph, name.as_ptr(), &mut dot), CcStatus::Ok);
        assert!(CStr::from_ptr(dot).to_str().unwrap().starts_with("graph \"ccc\""));
        cc_string_free(dot);

        cc_graph_free(realized);
        cc_graph_free(graph);
        cc_join_spec_free(spec);
        cc_group_free(g);
    }
}

#[test]
fn verification_reports() {
    let check = CString::new("thm1").unwrap();
    let mut json = ptr::null_mut();
    let mut matched = false;
    unsafe {
        assert_eq!(cc_verify_report_json(check.as_ptr(), 2, false, 0, &mut json, &mut matched), CcStatus::Ok);
        assert!(matched);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["cent"]["count"], 10);
        cc_string_free(json);
        let bogus = CString::new("thm9").unwrap();
        assert_eq!(
            cc_verify_report_json(bogus.as_ptr(), 2, false, 0, &mut json, &mut matched),
            CcStatus::InvalidArgument
        );
    }
}
