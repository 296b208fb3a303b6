use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use fattree_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ft_last_error()).to_string_lossy().into_owned() }
}

fn take(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s).to_string_lossy().into_owned() };
    unsafe { ft_string_free(s) };
    text
}

fn demo() -> *mut FtCatalog {
    let mut cat = ptr::null_mut();
    assert_eq!(unsafe { ft_catalog_demo(&mut cat) }, FtStatus::Ok);
    cat
}

#[test]
fn sixty_nodes_through_the_c_interface() {
    let cat = demo();
    let mut report = ptr::null_mut();
    let status = unsafe { ft_design(cat, 60, 1, 1, 8000, &mut report) };
    assert_eq!(status, FtStatus::Ok, "{}", last_error());
    let mut s = FtDesignSummary::default();
    assert_eq!(unsafe { ft_report_summary(report, &mut s) }, FtStatus::Ok);
    assert_eq!((s.edge_count, s.core_count, s.bundle_width, s.cable_count), (4, 2, 9, 132));
    assert_eq!(s.cost_minor, 7_656_000);

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ft_report_json(report, 1, &mut json) }, FtStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["winner"]["edge_count"], 4);
    assert_eq!(v["candidates"].as_array().unwrap().len(), 1);

    let mut dot = ptr::null_mut();
    assert_eq!(unsafe { ft_report_dot(report, &mut dot) }, FtStatus::Ok);
    assert!(take(dot).starts_with("graph fattree {"));

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { ft_report_text(report, &mut text) }, FtStatus::Ok);
    assert!(take(text).contains("cables          132"));

    unsafe {
        ft_report_free(report);
        ft_catalog_free(cat);
    }
}

#[test]
fn infeasible_sets_status_and_message() {
    let cat = demo();
    let mut report = ptr::null_mut();
    let status = unsafe { ft_design(cat, 2000, 1, 1, 0, &mut report) };
    assert_eq!(status, FtStatus::Infeasible);
    assert!(report.is_null());
    assert!(last_error().contains("insufficient radix"));
    unsafe { ft_catalog_free(cat) };
}

#[test]
fn null_arguments_are_rejected() {
    let mut cat = ptr::null_mut();
    assert_eq!(unsafe { ft_catalog_load(ptr::null(), &mut cat) }, FtStatus::NullOrInvalidArgument);
    assert!(last_error().contains("json is null"));
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { ft_design(ptr::null(), 10, 1, 1, 0, &mut report) }, FtStatus::NullOrInvalidArgument);
    let cat = demo();
    assert_eq!(unsafe { ft_design(cat, 10, 1, 0, 0, &mut report) }, FtStatus::NullOrInvalidArgument);
    unsafe {
        ft_catalog_free(cat);
        ft_catalog_free(ptr::null_mut());
        ft_report_free(ptr::null_mut());
        ft_string_free(ptr::null_mut());
    }
}

#[test]
fn bad_catalog_is_a_parse_error() {
    let json = CString::new(r#"{"currency":"USD","monolithic":[]}"#).unwrap();
    let mut cat = ptr::null_mut();
    assert_eq!(unsafe { ft_catalog_load(json.as_ptr(), &mut cat) }, FtStatus::ParseError);
    assert!(last_error().contains("catalog empty"), "{}", last_error());
}

#[test]
fn request_documents_and_case_study() {
    let catalog = CString::new(fattree_core::bundled::CASE_STUDY_CATALOG).unwrap();
    let request = CString::new(fattree_core::bundled::CASE_STUDY_REQUEST).unwrap();
    let mut cat = ptr::null_mut();
    assert_eq!(unsafe { ft_catalog_load(catalog.as_ptr(), &mut cat) }, FtStatus::Ok);
    assert!(unsafe { ft_catalog_config_count(cat) } >= 8);
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { ft_design_request(cat, request.as_ptr(), &mut report) }, FtStatus::Ok);
    let mut s = FtDesignSummary::default();
    unsafe { ft_report_summary(report, &mut s) };
    assert_eq!((s.edge_count, s.core_count, s.cost_minor), (14, 8, 25_992_000));
    let bad = CString::new("{").unwrap();
    let mut other = ptr::null_mut();
    assert_eq!(unsafe { ft_design_request(cat, bad.as_ptr(), &mut other) }, FtStatus::ParseError);
    unsafe {
        ft_report_free(report);
        ft_catalog_free(cat);
    }
}

#[test]
fn estimates() {
    let cat = demo();
    let id = CString::new("ib36").unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { ft_estimate_json(cat, id.as_ptr(), 648, 0, false, FtPrecision::Datasheet as u32, &mut out) };
    assert_eq!(status, FtStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["est_switch_cost"], "59486400");
    assert_eq!(v["bundle_factor"], 1);

    assert_eq!(unsafe { ft_estimate_json(cat, id.as_ptr(), 649, 0, false, 0, &mut out) }, FtStatus::Infeasible);
    assert_eq!(unsafe { ft_estimate_json(cat, id.as_ptr(), 64, 0, false, 7, &mut out) }, FtStatus::NullOrInvalidArgument);
    let unknown = CString::new("nope").unwrap();
    assert_eq!(unsafe { ft_estimate_json(cat, unknown.as_ptr(), 64, 0, false, 0, &mut out) }, FtStatus::NotFound);
    unsafe { ft_catalog_free(cat) };
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(ft_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/fattree.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["ft_design", "ft_report_free", "ft_string_free", "ft_last_error", "FT_STATUS_INFEASIBLE"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let src = std::env::temp_dir().join(format!("fattree_header_{}.c", std::process::id()));
    std::fs::write(
        &src,
        "#include \"fattree.h\"\nint main(void) { FtCatalog *c = 0; return ft_catalog_demo(&c) == FT_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let cc = Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header.parent().unwrap())
        .arg(&src)
        .output();
    let _ = std::fs::remove_file(&src);
    match cc {
        Ok(o) => assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr)),
        Err(e) => eprintln!("no C compiler, syntax check skipped: {e}"),
    }
}
