//! C interface to the `domino` library.
//!
//! Every fallible call returns a [`DominoStatus`]; on failure the message is
//! available from [`domino_last_error`] on the same thread. Handles are
//! opaque and must be released with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use domino::constructions::{generate, FamilySpec};
use domino::domination::{SolutionChain, Variant};
use domino::error::Error;
use domino::exact::{solve, Baseline, SolverCaps};
use domino::format::{parse, serialize};
use domino::graph::ArrivalSequence;
use domino::harness::{verify_suite, SuiteOptions};
use domino::online::{run_online, Algorithm};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidSequence = 3,
    Parse = 4,
    NotAlwaysConnected = 5,
    ContractViolation = 6,
    Infeasible = 7,
    CapExceeded = 8,
    Parameter = 9,
    Precondition = 10,
    Unknown = 11,
    Config = 12,
    Io = 13,
    BufferTooSmall = 14,
    Panic = 15,
}

impl From<&Error> for DominoStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidSequence { .. } => DominoStatus::InvalidSequence,
            Error::Parse { .. } => DominoStatus::Parse,
            Error::NotAlwaysConnected { .. } => DominoStatus::NotAlwaysConnected,
            Error::ContractViolation { .. } => DominoStatus::ContractViolation,
            Error::Infeasible { .. } => DominoStatus::Infeasible,
            Error::CapExceeded { .. } => DominoStatus::CapExceeded,
            Error::Parameter(_) => DominoStatus::Parameter,
            Error::Precondition(_) => DominoStatus::Precondition,
            Error::Unknown { .. } => DominoStatus::Unknown,
            Error::Config(_) => DominoStatus::Config,
            Error::Io(_) => DominoStatus::Io,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominoVariant {
    Ds = 0,
    Cds = 1,
    Tds = 2,
    Ids = 3,
}

impl From<DominoVariant> for Variant {
    fn from(v: DominoVariant) -> Self {
        match v {
            DominoVariant::Ds => Variant::Ds,
            DominoVariant::Cds => Variant::Cds,
            DominoVariant::Tds => Variant::Tds,
            DominoVariant::Ids => Variant::Ids,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominoBaseline {
    Offline = 0,
    Incremental = 1,
}

/// An arrival sequence.
pub struct DominoSequence {
    inner: ArrivalSequence,
}

/// A selection chain: vertex `vertices[k]` joined at step `steps[k]`.
pub struct DominoChain {
    vertices: Vec<u32>,
    steps: Vec<u32>,
}

impl DominoChain {
    fn from_chain(chain: &SolutionChain) -> Self {
        let pairs = chain.pairs();
        Self {
            vertices: pairs.iter().map(|&(v, _)| v as u32).collect(),
            steps: pairs.iter().map(|&(_, t)| t as u32).collect(),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

enum Failure {
    Status(DominoStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> DominoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            DominoStatus::Ok
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            DominoStatus::from(&e)
        }
        Ok(Err(Failure::Status(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            DominoStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(DominoStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(DominoStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn seq_arg<'a>(p: *const DominoSequence) -> Result<&'a ArrivalSequence, Failure> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| null("sequence"))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn boxed_sequence(inner: ArrivalSequence) -> *mut DominoSequence {
    Box::into_raw(Box::new(DominoSequence { inner }))
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into the library from this thread.
#[no_mangle]
pub extern "C" fn domino_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn domino_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses the text instance format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn domino_sequence_parse(text: *const c_char, out: *mut *mut DominoSequence) -> DominoStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let text = str_arg(text, "text")?;
        *out = boxed_sequence(parse(text)?);
        Ok(())
    })
}

/// Builds a construction family instance, e.g. `("rotor", "delta=4")`.
///
/// # Safety
/// `family` and `params` must be NUL-terminated strings (`params` may be NULL);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn domino_sequence_generate(
    family: *const c_char,
    params: *const c_char,
    out: *mut *mut DominoSequence,
) -> DominoStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let family = str_arg(family, "family")?;
        let params = if params.is_null() { "" } else { str_arg(params, "params")? };
        *out = boxed_sequence(generate(&FamilySpec::from_params(family, params)?)?);
        Ok(())
    })
}

/// Builds a sequence from flattened earlier-neighbor lists: vertex `i`
/// (1-based) has `counts[i-1]` earlier neighbors, stored consecutively in
/// `neighbors`.
///
/// # Safety
/// `counts` must hold `n` entries and `neighbors` their sum; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn domino_sequence_from_arrivals(
    n: usize,
    counts: *const u32,
    neighbors: *const u32,
    neighbors_len: usize,
    out: *mut *mut DominoSequence,
) -> DominoStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        if n > 0 && counts.is_null() {
            return Err(null("counts"));
        }
        if neighbors_len > 0 && neighbors.is_null() {
            return Err(null("neighbors"));
        }
        let counts = if n == 0 { &[][..] } else { std::slice::from_raw_parts(counts, n) };
        let flat = if neighbors_len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(neighbors, neighbors_len)
        };
        let total: usize = counts.iter().map(|&c| c as usize).sum();
        if total != neighbors_len {
            return Err(Failure::Status(
                DominoStatus::Parameter,
                format!("counts sum to {total} but {neighbors_len} neighbors were given"),
            ));
        }
        let mut arrivals = Vec::with_capacity(n);
        let mut at = 0;
        for &c in counts {
            let c = c as usize;
            arrivals.push(flat[at..at + c].iter().map(|&v| v as usize).collect());
            at += c;
        }
        *out = boxed_sequence(ArrivalSequence::new("ffi", arrivals)?);
        Ok(())
    })
}

/// # Safety
/// `seq` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn domino_sequence_free(seq: *mut DominoSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `seq` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn domino_sequence_len(seq: *const DominoSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.inner.n())
}

/// Renders the sequence in the text format; release with [`domino_string_free`].
///
/// # Safety
/// `seq` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn domino_sequence_serialize(seq: *const DominoSequence, out: *mut *mut c_char) -> DominoStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let text = serialize(seq_arg(seq)?);
        *out = CString::new(text).expect("serialized text has no nul").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn domino_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact optimum size. `cap` bounds the instance size the solver accepts;
/// 0 selects the default cap of the chosen baseline.
///
/// # Safety
/// `seq` must be a live handle; `out_size` must be writable.
#[no_mangle]
pub unsafe extern "C" fn domino_solve(
    seq: *const DominoSequence,
    variant: DominoVariant,
    baseline: DominoBaseline,
    cap: usize,
    out_size: *mut usize,
) -> DominoStatus {
    guard(|| {
        let out = out_arg(out_size, "out_size")?;
        let seq = seq_arg(seq)?;
        let baseline = match baseline {
            DominoBaseline::Offline => Baseline::Offline,
            DominoBaseline::Incremental => Baseline::Incremental,
        };
        let mut caps = SolverCaps::default();
        if cap > 0 {
            caps = SolverCaps::new(cap, cap)?;
        }
        *out = solve(variant.into(), baseline, seq, &caps)?.size;
        Ok(())
    })
}

/// Runs an online algorithm by CLI name (`parent`, `first-parent`,
/// `greedy-ids`, `even-layer:0`, `even-layer:1`) and returns its chain.
///
/// # Safety
/// `seq` must be a live handle, `algorithm` a NUL-terminated string and
/// `out` writable. Release the chain with [`domino_chain_free`].
#[no_mangle]
pub unsafe extern "C" fn domino_run_online(
    seq: *const DominoSequence,
    algorithm: *const c_char,
    variant: DominoVariant,
    out: *mut *mut DominoChain,
) -> DominoStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let seq = seq_arg(seq)?;
        let mut alg: Algorithm = str_arg(algorithm, "algorithm")?.parse()?;
        let run = run_online(&mut alg, variant.into(), seq)?;
        *out = Box::into_raw(Box::new(DominoChain::from_chain(&run.chain)));
        Ok(())
    })
}

/// Number of selected vertices, or 0 for NULL.
///
/// # Safety
/// `chain` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn domino_chain_len(chain: *const DominoChain) -> usize {
    chain.as_ref().map_or(0, |c| c.vertices.len())
}

/// Copies the selections into caller buffers of `capacity` entries each.
///
/// # Safety
/// `chain` must be a live handle; `vertices` and `steps` must hold `capacity` entries.
#[no_mangle]
pub unsafe extern "C" fn domino_chain_copy(
    chain: *const DominoChain,
    vertices: *mut u32,
    steps: *mut u32,
    capacity: usize,
) -> DominoStatus {
    guard(|| {
        let chain = chain.as_ref().ok_or_else(|| null("chain"))?;
        let len = chain.vertices.len();
        if capacity < len {
            return Err(Failure::Status(
                DominoStatus::BufferTooSmall,
                format!("need {len} entries, got {capacity}"),
            ));
        }
        if len > 0 {
            if vertices.is_null() || steps.is_null() {
                return Err(null("output buffer"));
            }
            ptr::copy_nonoverlapping(chain.vertices.as_ptr(), vertices, len);
            ptr::copy_nonoverlapping(chain.steps.as_ptr(), steps, len);
        }
        Ok(())
    })
}

/// # Safety
/// `chain` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn domino_chain_free(chain: *mut DominoChain) {
    if !chain.is_null() {
        drop(Box::from_raw(chain));
    }
}

/// Runs an invariant suite (or `all`) and reports the total failure count.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out_failures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn domino_verify_suite(
    name: *const c_char,
    seed: u64,
    pool: usize,
    out_failures: *mut usize,
) -> DominoStatus {
    guard(|| {
        let out = out_arg(out_failures, "out_failures")?;
        let name = str_arg(name, "name")?;
        let opts = SuiteOptions {
            seed,
            pool,
            caps: SolverCaps::default(),
        };
        *out = verify_suite(name, &opts)?.iter().map(|s| s.failures.len()).sum();
        Ok(())
    })
}
