//! C ABI for jetclass.
//!
//! Jets and multijets are opaque heap handles released with their `_free`
//! function. Strings returned through out-parameters are owned by the caller
//! and released with [`jc_string_free`]. Every fallible call returns a
//! [`JcStatus`]; the message of the last failure on the calling thread is
//! available from [`jc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clap::Parser;
use jetclass::cli::parse::{parse_jet, Vars};
use jetclass::cli::{exit_code, execute, Cli};
use jetclass::germclass::{classify, local_degree, LocalDegree, Tag};
use jetclass::jetalg::JetMap;
use jetclass::multigerm::{is_admissible, MultiJet};
use jetclass::tangent::tangent_codim;
use jetclass::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JcTag {
    Regular = 0,
    Fold = 1,
    Cusp = 2,
    Swallowtail = 3,
    Lips = 4,
    BeakToBeak = 5,
    Unclassified = 6,
}

impl From<Tag> for JcTag {
    fn from(t: Tag) -> Self {
        match t {
            Tag::Regular => JcTag::Regular,
            Tag::Fold => JcTag::Fold,
            Tag::Cusp => JcTag::Cusp,
            Tag::Swallowtail => JcTag::Swallowtail,
            Tag::Lips => JcTag::Lips,
            Tag::BeakToBeak => JcTag::BeakToBeak,
            Tag::Unclassified => JcTag::Unclassified,
        }
    }
}

/// A jet of a map germ at the origin.
pub struct JcJet {
    jet: JetMap,
    vars: Vars,
}

/// An ordered list of jets with a common source, target and order.
pub struct JcMultiJet {
    branches: Vec<JetMap>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

struct Failure(JcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => JcStatus::Parse,
            ref other if exit_code(other) == 1 => JcStatus::InvalidInput,
            _ => JcStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> JcStatus {
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| {
        Err(Failure(JcStatus::Internal, "panic inside jetclass".into()))
    });
    match outcome {
        Ok(()) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            JcStatus::Ok
        }
        Err(Failure(status, msg)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
            status
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(JcStatus::NullArgument, format!("{what} is null"))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(JcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', "")).expect("no interior nul").into_raw()
}

/// Parse `text` over the variables `z1..zn, x, y` at the given order.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_jet_parse(
    text: *const c_char,
    n: usize,
    order: u32,
    out: *mut *mut JcJet,
) -> JcStatus {
    guard(|| {
        let src = c_str(text, "text")?;
        let vars = Vars::standard(n);
        let jet = parse_jet(src, &vars, order)?;
        put(out, Box::into_raw(Box::new(JcJet { jet, vars })), "out")
    })
}

/// # Safety
/// `jet` must come from [`jc_jet_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jc_jet_free(jet: *mut JcJet) {
    if !jet.is_null() {
        drop(Box::from_raw(jet));
    }
}

/// The jet in the input syntax.
///
/// # Safety
/// `jet` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_jet_to_string(jet: *const JcJet, out: *mut *mut c_char) -> JcStatus {
    guard(|| {
        let j = deref(jet, "jet")?;
        put(out, owned_string(j.jet.to_text(&j.vars.names())), "out")
    })
}

/// Classification tag and absolute signature; the signature is -1 when the
/// class carries none.
///
/// # Safety
/// `jet` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn jc_classify(
    jet: *const JcJet,
    tag: *mut JcTag,
    abs_signature: *mut i32,
) -> JcStatus {
    guard(|| {
        let c = classify(&deref(jet, "jet")?.jet)?;
        put(tag, c.tag.into(), "tag")?;
        let sig = c.abs_signature.map_or(-1, |s| s as i32);
        put(abs_signature, sig, "abs_signature")
    })
}

/// Local degree at the origin; `defined` is false when it is not defined
/// for the jet's dimensions and form.
///
/// # Safety
/// `jet` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn jc_local_degree(
    jet: *const JcJet,
    degree: *mut i32,
    defined: *mut bool,
) -> JcStatus {
    guard(|| {
        let (d, ok) = match local_degree(&deref(jet, "jet")?.jet)? {
            LocalDegree::Value(v) => (v, true),
            LocalDegree::NotDefined => (0, false),
        };
        put(degree, d, "degree")?;
        put(defined, ok, "defined")
    })
}

/// Codimension of the extended tangent space in the degree-`d` truncation.
///
/// # Safety
/// `jet` must be a live handle and `codim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn jc_tangent_codim(jet: *const JcJet, d: u32, codim: *mut usize) -> JcStatus {
    guard(|| {
        let r = tangent_codim(&deref(jet, "jet")?.jet, d)?;
        put(codim, r.codim, "codim")
    })
}

#[no_mangle]
pub extern "C" fn jc_multijet_new() -> *mut JcMultiJet {
    Box::into_raw(Box::new(JcMultiJet { branches: Vec::new() }))
}

/// Append a copy of `jet` as the next branch.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn jc_multijet_push(multi: *mut JcMultiJet, jet: *const JcJet) -> JcStatus {
    guard(|| {
        let j = deref(jet, "jet")?.jet.clone();
        let m = multi.as_mut().ok_or_else(|| null("multi"))?;
        m.branches.push(j);
        Ok(())
    })
}

/// # Safety
/// `multi` must come from [`jc_multijet_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jc_multijet_free(multi: *mut JcMultiJet) {
    if !multi.is_null() {
        drop(Box::from_raw(multi));
    }
}

/// Admissibility verdict and stratum label of the multijet.
///
/// # Safety
/// `multi` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn jc_multijet_admissible(
    multi: *const JcMultiJet,
    admissible: *mut bool,
    label: *mut *mut c_char,
) -> JcStatus {
    guard(|| {
        let m = MultiJet::new(deref(multi, "multi")?.branches.clone())?;
        let r = is_admissible(&m)?;
        put(admissible, r.admissible, "admissible")?;
        put(label, owned_string(r.stratum_label), "label")
    })
}

/// Run a command-line invocation (without the program name) and return its
/// rendered report.
///
/// # Safety
/// `argv` must point to `argc` nul-terminated strings and `out` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn jc_run(
    argv: *const *const c_char,
    argc: usize,
    out: *mut *mut c_char,
) -> JcStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(null("argv"));
        }
        let mut args = vec!["jetclass".to_string()];
        for i in 0..argc {
            args.push(c_str(*argv.add(i), "argument")?.to_string());
        }
        let cli = Cli::try_parse_from(args)
            .map_err(|e| Failure(JcStatus::InvalidInput, e.to_string()))?;
        let report = execute(&cli)?;
        put(out, owned_string(report), "out")
    })
}

/// Message of the last failed call on this thread, or null. The caller owns
/// the returned string.
#[no_mangle]
pub extern "C" fn jc_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone().map_or(ptr::null_mut(), owned_string))
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn jc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
