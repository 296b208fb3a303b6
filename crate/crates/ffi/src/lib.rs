//! C interface to the fat-tree designer.
//!
//! Catalogs and design reports are opaque handles owned by the caller and
//! released with their `_free` function. Every call returns an [`FtStatus`];
//! on failure, [`ft_last_error`] describes the problem. Strings returned
//! through `char **` out-parameters are heap allocated and must be released
//! with [`ft_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fattree_core::bundled;
use fattree_core::catalog::{load_catalog, Catalog};
use fattree_core::designer::{design, DesignError, DesignReport, DesignRequest};
use fattree_core::estimator::{lower_bound_estimate, EstimateError, PortPrecision};
use fattree_core::report::{emit_wiring, render_design};
use fattree_core::units::{BlockingFactor, Money};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtStatus {
    Ok = 0,
    /// A required pointer was null or a string was not UTF-8.
    NullOrInvalidArgument = 1,
    /// A catalog or request document was rejected.
    ParseError = 2,
    /// The request has no solution with the given catalog and constraints.
    Infeasible = 3,
    /// A referenced switch is not in the catalog.
    NotFound = 4,
    /// An internal error; the library caught a panic.
    Internal = 5,
}

/// Precision of per-port figures in estimates.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtPrecision {
    Exact = 0,
    Datasheet = 1,
}

/// A loaded switch catalog.
pub struct FtCatalog {
    inner: Catalog,
}

/// The outcome of a successful design run.
pub struct FtReport {
    inner: DesignReport,
}

/// Headline numbers of the optimal design. Money is in minor currency
/// units, power in milliwatts.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FtDesignSummary {
    /// 0 fat-tree, 1 star, 2 direct connect.
    pub kind: u32,
    pub node_count: u64,
    pub edge_count: u64,
    pub core_count: u64,
    /// 0 when there is no core layer.
    pub bundle_width: u64,
    pub cable_count: u64,
    pub cost_minor: i64,
    pub power_milliwatts: i64,
    pub rack_units: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(FtStatus, String);

fn guard<F>(f: F) -> FtStatus
where
    F: FnOnce() -> Result<(), Fail>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            FtStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            FtStatus::Internal
        }
    }
}

fn invalid(msg: &str) -> Fail {
    Fail(FtStatus::NullOrInvalidArgument, msg.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(invalid(&format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(&format!("{name} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(invalid("out is null"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(invalid("out is null"));
    }
    let c = CString::new(s).map_err(|_| Fail(FtStatus::Internal, "string contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn design_fail(e: DesignError) -> Fail {
    let status = match e {
        DesignError::InsufficientRadix { .. } | DesignError::Infeasible { .. } => FtStatus::Infeasible,
        DesignError::UnknownSwitch(_) => FtStatus::NotFound,
        DesignError::InvalidRequest(_) => FtStatus::NullOrInvalidArgument,
    };
    Fail(status, e.to_string())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ft_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn ft_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a catalog document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ft_catalog_load(json: *const c_char, out: *mut *mut FtCatalog) -> FtStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let inner = load_catalog(text).map_err(|e| Fail(FtStatus::ParseError, e.to_string()))?;
        write_out(out, FtCatalog { inner })
    })
}

/// The bundled catalog with a single 36-port switch.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ft_catalog_demo(out: *mut *mut FtCatalog) -> FtStatus {
    guard(|| {
        let inner = load_catalog(bundled::DEMO_CATALOG).map_err(|e| Fail(FtStatus::Internal, e.to_string()))?;
        write_out(out, FtCatalog { inner })
    })
}

/// Releases a catalog. Null is ignored.
///
/// # Safety
/// `catalog` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ft_catalog_free(catalog: *mut FtCatalog) {
    if !catalog.is_null() {
        drop(Box::from_raw(catalog));
    }
}

/// Number of switch configurations in a catalog, modular ones expanded.
///
/// # Safety
/// `catalog` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ft_catalog_config_count(catalog: *const FtCatalog) -> u64 {
    catalog.as_ref().map_or(0, |c| c.inner.configs().len() as u64)
}

/// Designs from a full request document.
///
/// # Safety
/// `catalog` must be a live handle, `request_json` NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ft_design_request(
    catalog: *const FtCatalog,
    request_json: *const c_char,
    out: *mut *mut FtReport,
) -> FtStatus {
    guard(|| {
        let cat = catalog.as_ref().ok_or_else(|| invalid("catalog is null"))?;
        let text = str_arg(request_json, "request_json")?;
        let req: DesignRequest =
            serde_json::from_str(text).map_err(|e| Fail(FtStatus::ParseError, format!("request: {e}")))?;
        let inner = design(&req, &cat.inner).map_err(design_fail)?;
        write_out(out, FtReport { inner })
    })
}

/// Designs a rack-mounted cluster of `nodes` at blocking factor
/// `blocking_num / blocking_den`, cables at `cable_cost_minor` each.
///
/// # Safety
/// `catalog` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ft_design(
    catalog: *const FtCatalog,
    nodes: u64,
    blocking_num: u64,
    blocking_den: u64,
    cable_cost_minor: i64,
    out: *mut *mut FtReport,
) -> FtStatus {
    guard(|| {
        let cat = catalog.as_ref().ok_or_else(|| invalid("catalog is null"))?;
        let bl = BlockingFactor::new(blocking_num, blocking_den).map_err(|e| invalid(&e))?;
        let req = DesignRequest::rack_mounted(nodes, bl, Money(cable_cost_minor));
        let inner = design(&req, &cat.inner).map_err(design_fail)?;
        write_out(out, FtReport { inner })
    })
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `report` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ft_report_free(report: *mut FtReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Headline numbers of the optimal design.
///
/// # Safety
/// `report` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ft_report_summary(report: *const FtReport, out: *mut FtDesignSummary) -> FtStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| invalid("report is null"))?;
        let out = out.as_mut().ok_or_else(|| invalid("out is null"))?;
        let w = &r.inner.winner;
        *out = FtDesignSummary {
            kind: w.kind as u32,
            node_count: w.node_count,
            edge_count: w.edge_count,
            core_count: w.core_count,
            bundle_width: w.bundle_width().unwrap_or(0),
            cable_count: w.cable_count,
            cost_minor: w.metrics.cost.minor(),
            power_milliwatts: w.metrics.power.milli(),
            rack_units: w.metrics.rack_units,
        };
        Ok(())
    })
}

/// The report as JSON, listing at most `top` candidates (0 for all).
///
/// # Safety
/// `report` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ft_report_json(report: *const FtReport, top: u64, out: *mut *mut c_char) -> FtStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| invalid("report is null"))?;
        let shown = if top == 0 { r.inner.clone() } else { r.inner.truncated(top as usize) };
        let json = serde_json::to_string_pretty(&shown).map_err(|e| Fail(FtStatus::Internal, e.to_string()))?;
        write_string(out, json)
    })
}

/// The report as plain text.
///
/// # Safety
/// `report` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ft_report_text(report: *const FtReport, out: *mut *mut c_char) -> FtStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| invalid("report is null"))?;
        write_string(out, render_design(&r.inner))
    })
}

/// Wiring diagram of the optimal design in DOT.
///
/// # Safety
/// `report` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ft_report_dot(report: *const FtReport, out: *mut *mut c_char) -> FtStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| invalid("report is null"))?;
        write_string(out, emit_wiring(&r.inner.winner))
    })
}

/// Per-port lower-bound estimate for `nodes` built from `switch_id`, as JSON.
/// `precision` is an [`FtPrecision`] value.
///
/// # Safety
/// `catalog` must be a live handle, `switch_id` NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ft_estimate_json(
    catalog: *const FtCatalog,
    switch_id: *const c_char,
    nodes: u64,
    cable_cost_minor: i64,
    blade: bool,
    precision: u32,
    out: *mut *mut c_char,
) -> FtStatus {
    guard(|| {
        let cat = catalog.as_ref().ok_or_else(|| invalid("catalog is null"))?;
        let id = str_arg(switch_id, "switch_id")?;
        let sw = cat
            .inner
            .find(id)
            .ok_or_else(|| Fail(FtStatus::NotFound, format!("unknown switch `{id}`")))?;
        let precision = match precision {
            p if p == FtPrecision::Exact as u32 => PortPrecision::Exact,
            p if p == FtPrecision::Datasheet as u32 => PortPrecision::Datasheet,
            p => return Err(invalid(&format!("unknown precision {p}"))),
        };
        let est = lower_bound_estimate(nodes, sw, Money(cable_cost_minor), blade, precision).map_err(|e| match e {
            EstimateError::ExceedsRadix { .. } => Fail(FtStatus::Infeasible, e.to_string()),
            _ => invalid(&e.to_string()),
        })?;
        let json = serde_json::to_string_pretty(&est).map_err(|e| Fail(FtStatus::Internal, e.to_string()))?;
        write_string(out, json)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ft_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
