//! C ABI over `commcent`. Objects are opaque handles freed by their
//! `*_free` function; strings returned through out-pointers are freed with
//! `cc_string_free`. Every call returns a `CcStatus`, and on failure
//! `cc_last_error` describes the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use commcent::centralizers::cent_count;
use commcent::cccgraph::ccc_graph;
use commcent::conjugacy::conjugacy_classes;
use commcent::joins::{build_m1, build_m2, realize, verify_join_structure_with_budget, JoinSpec, DEFAULT_ISO_BUDGET};
use commcent::presentations::{FamilySpec, QuotientKind};
use commcent::verify::{self, VerifyOptions};
use commcent::{Error, Group, SimpleGraph};

/// Status codes; the non-zero values match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    Mismatch = 1,
    InvalidArgument = 2,
    Inconsistent = 3,
    Io = 4,
    BudgetExhausted = 5,
    NullPointer = 6,
    Panic = 7,
}

pub struct CcGroup(Group);
pub struct CcGraph(SimpleGraph);
pub struct CcJoinSpec(JoinSpec);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(CcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match commcent::cli::exit_code(&e) {
            2 => CcStatus::InvalidArgument,
            3 => CcStatus::Inconsistent,
            4 => CcStatus::Io,
            5 => CcStatus::BudgetExhausted,
            _ => CcStatus::Mismatch,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(CcStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: String) -> Fail {
    Fail(CcStatus::InvalidArgument, msg)
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CcStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("panic: {msg}"));
            CcStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| invalid(format!("{what} is not UTF-8")))
}

fn owned_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s).map(CString::into_raw).map_err(|_| invalid("string contains NUL".into()))
}

fn element(g: &Group, x: usize) -> Result<usize, Fail> {
    if x < g.order() {
        Ok(x)
    } else {
        Err(Error::IndexOutOfRange { index: x, order: g.order() }.into())
    }
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a group from a family string such as `heis:q=9`.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_group_build(family: *const c_char, max_order: usize, out: *mut *mut CcGroup) -> CcStatus {
    guard(|| {
        let spec: FamilySpec = text(family, "family")?.parse()?;
        if let Some(order) = spec.order() {
            if order > max_order {
                return Err(Error::BoundExceeded { order, bound: max_order }.into());
            }
        }
        let g = spec.build()?;
        write(out, Box::into_raw(Box::new(CcGroup(g))))
    })
}

/// # Safety
/// `g` must come from `cc_group_build` or be null.
#[no_mangle]
pub unsafe extern "C" fn cc_group_free(g: *mut CcGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Group order, or 0 for a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cc_group_order(g: *const CcGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_group_mul(g: *const CcGroup, x: usize, y: usize, out: *mut usize) -> CcStatus {
    guard(|| {
        let g = &deref(g, "group")?.0;
        write(out, g.mul(x, y)?)
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_group_power(g: *const CcGroup, x: usize, k: u64, out: *mut usize) -> CcStatus {
    guard(|| {
        let g = &deref(g, "group")?.0;
        write(out, g.power(element(g, x)?, k))
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_group_element_order(g: *const CcGroup, x: usize, out: *mut usize) -> CcStatus {
    guard(|| {
        let g = &deref(g, "group")?.0;
        write(out, g.element_order(element(g, x)?))
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_group_center_size(g: *const CcGroup, out: *mut usize) -> CcStatus {
    guard(|| write(out, deref(g, "group")?.0.center().size()))
}

/// Number of distinct element centralizers.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_group_cent_count(g: *const CcGroup, out: *mut usize) -> CcStatus {
    guard(|| write(out, cent_count(&deref(g, "group")?.0)?))
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_group_class_count(g: *const CcGroup, out: *mut usize) -> CcStatus {
    guard(|| write(out, conjugacy_classes(&deref(g, "group")?.0)?.len()))
}

/// Runs one verification (`thm1`, `thm2` or `tables`) on the exemplar for
/// prime `p`; `nonabelian` selects the quotient kind and `z_order` = 0 picks
/// the default center order. Writes the JSON report and whether it matched.
///
/// # Safety
/// `check` must be a NUL-terminated string; `json` and `matched` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cc_verify_report_json(
    check: *const c_char,
    p: usize,
    nonabelian: bool,
    z_order: usize,
    json: *mut *mut c_char,
    matched: *mut bool,
) -> CcStatus {
    guard(|| {
        let opts = VerifyOptions::default();
        let kind = if nonabelian { QuotientKind::Nonabelian } else { QuotientKind::Abelian };
        let which = text(check, "check")?;
        let s = verify::subject(p, kind, (z_order != 0).then_some(z_order), &opts)?;
        let report = match which {
            "thm1" => verify::verify_thm1(&s, &opts)?,
            "thm2" => verify::verify_thm2(&s, &opts)?,
            "tables" => verify::verify_tables(&s, &opts)?,
            other => return Err(invalid(format!("unknown check {other:?}"))),
        };
        write(matched, report.matched)?;
        write(json, owned_string(report.to_json())?)
    })
}

/// Commuting conjugacy class graph of `g`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_ccc_graph(g: *const CcGroup, out: *mut *mut CcGraph) -> CcStatus {
    guard(|| {
        let graph = ccc_graph(&deref(g, "group")?.0)?;
        write(out, Box::into_raw(Box::new(CcGraph(graph))))
    })
}

/// # Safety
/// `g` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_free(g: *mut CcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_vertex_count(g: *const CcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n_vertices())
}

/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_edge_count(g: *const CcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_has_edge(g: *const CcGraph, u: usize, v: usize, out: *mut bool) -> CcStatus {
    guard(|| {
        let g = &deref(g, "graph")?.0;
        let n = g.n_vertices();
        if u >= n || v >= n {
            return Err(Error::IndexOutOfRange { index: u.max(v), order: n }.into());
        }
        write(out, g.has_edge(u, v))
    })
}

/// # Safety
/// `g` must be a live handle; `name` a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_to_dot(g: *const CcGraph, name: *const c_char, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let dot = deref(g, "graph")?.0.to_dot(text(name, "name")?);
        write(out, owned_string(dot)?)
    })
}

fn spec_out(spec: commcent::Result<JoinSpec>, out: *mut *mut CcJoinSpec) -> Result<(), Fail> {
    let spec = spec?;
    unsafe { write(out, Box::into_raw(Box::new(CcJoinSpec(spec)))) }
}

/// Join shape predicted for an abelian central quotient.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_join_spec_m1(p: usize, z_order: usize, out: *mut *mut CcJoinSpec) -> CcStatus {
    guard(|| spec_out(build_m1(p, z_order), out))
}

/// Join shape predicted for a non-abelian central quotient.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_join_spec_m2(p: usize, z_order: usize, out: *mut *mut CcJoinSpec) -> CcStatus {
    guard(|| spec_out(build_m2(p, z_order), out))
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn cc_join_spec_free(s: *mut CcJoinSpec) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_join_spec_to_json(s: *const CcJoinSpec, out: *mut *mut c_char) -> CcStatus {
    guard(|| write(out, owned_string(deref(s, "join spec")?.0.to_json())?))
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_join_realize(s: *const CcJoinSpec, out: *mut *mut CcGraph) -> CcStatus {
    guard(|| {
        let g = realize(&deref(s, "join spec")?.0);
        write(out, Box::into_raw(Box::new(CcGraph(g))))
    })
}

/// Whether `g` has the join shape `s`; `budget` = 0 uses the default node
/// budget.
///
/// # Safety
/// `g` and `s` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_verify_join(
    g: *const CcGraph,
    s: *const CcJoinSpec,
    budget: u64,
    out: *mut bool,
) -> CcStatus {
    guard(|| {
        let graph = &deref(g, "graph")?.0;
        let spec = &deref(s, "join spec")?.0;
        let budget = if budget == 0 { DEFAULT_ISO_BUDGET } else { budget };
        write(out, verify_join_structure_with_budget(graph, spec, budget)?)
    })
}
