//! C ABI for folnewt.
//!
//! A space is loaded from its JSON document into an opaque handle; every
//! query returns a status code and, where it produces a report, a
//! NUL-terminated JSON string owned by the caller and released with
//! `folnewt_string_free`. The message of the last failure on the calling
//! thread is available from `folnewt_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use folnewt::cli;
use folnewt::foliated::{load_space_json, Atlas};
use folnewt::groebner::Fuel;
use folnewt::nnd::{check_nnd_direct, check_nnd_via_theorem, Budget, Strategy, Verdict};

/// Status codes. Non-negative values mirror the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolnewtStatus {
    /// Definitive positive answer (non-degenerate, logSing empty, ...).
    Ok = 0,
    /// Definitive negative answer (degenerate, logSing nonempty, ...).
    Negative = 1,
    /// Fuel ran out before an answer was reached.
    Undetermined = 2,
    /// The two deciders disagreed.
    Disagree = 70,
    NullArgument = -1,
    InvalidUtf8 = -2,
    InvalidInput = -3,
    InvalidArgument = -4,
    Panic = -5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolnewtStrategy {
    DeepestFirst = 0,
    LexFirst = 1,
    WidestPolyhedron = 2,
    ShallowestFirst = 3,
}

impl From<FolnewtStrategy> for Strategy {
    fn from(s: FolnewtStrategy) -> Self {
        match s {
            FolnewtStrategy::DeepestFirst => Strategy::DeepestFirst,
            FolnewtStrategy::LexFirst => Strategy::LexFirst,
            FolnewtStrategy::WidestPolyhedron => Strategy::WidestPolyhedron,
            FolnewtStrategy::ShallowestFirst => Strategy::ShallowestFirst,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolnewtRoute {
    Direct = 0,
    Theorem = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolnewtCommand {
    Polyhedra = 0,
    Logsing = 1,
    CheckNnd = 2,
    Desing = 3,
    Equiv = 4,
    Validate = 5,
}

impl FolnewtCommand {
    fn name(self) -> &'static str {
        match self {
            FolnewtCommand::Polyhedra => "polyhedra",
            FolnewtCommand::Logsing => "logsing",
            FolnewtCommand::CheckNnd => "check-nnd",
            FolnewtCommand::Desing => "desing",
            FolnewtCommand::Equiv => "equiv",
            FolnewtCommand::Validate => "validate",
        }
    }
}

/// Resource limits; obtain defaults from `folnewt_options_default`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FolnewtOptions {
    pub fuel_spairs: u64,
    pub fuel_terms: usize,
    pub fuel_blowups: usize,
    pub strategy: FolnewtStrategy,
}

impl FolnewtOptions {
    fn budget(&self) -> Result<Budget, String> {
        if self.fuel_spairs == 0 || self.fuel_terms == 0 {
            return Err("fuel limits must be positive".into());
        }
        Ok(Budget {
            fuel: Fuel::new(self.fuel_spairs, self.fuel_terms),
            max_blowups: self.fuel_blowups,
        })
    }
}

/// A loaded foliated space.
pub struct FolnewtSpace {
    source: String,
    atlas: Atlas,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guarded(f: impl FnOnce() -> FolnewtStatus) -> FolnewtStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            FolnewtStatus::Panic
        }
    }
}

fn status_of(code: i32) -> FolnewtStatus {
    match code {
        0 => FolnewtStatus::Ok,
        1 => FolnewtStatus::Negative,
        2 => FolnewtStatus::Undetermined,
        70 => FolnewtStatus::Disagree,
        _ => FolnewtStatus::InvalidInput,
    }
}

fn verdict_status(v: &Verdict) -> FolnewtStatus {
    match v {
        Verdict::NonDegenerate => FolnewtStatus::Ok,
        Verdict::Degenerate { .. } => FolnewtStatus::Negative,
        Verdict::Undetermined { reason } => {
            set_error(reason.clone());
            FolnewtStatus::Undetermined
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, FolnewtStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(FolnewtStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        FolnewtStatus::InvalidUtf8
    })
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

#[no_mangle]
pub extern "C" fn folnewt_options_default() -> FolnewtOptions {
    FolnewtOptions {
        fuel_spairs: Fuel::DEFAULT_SPAIRS,
        fuel_terms: Fuel::DEFAULT_TERMS,
        fuel_blowups: Budget::DEFAULT_BLOWUPS,
        strategy: FolnewtStrategy::ShallowestFirst,
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn folnewt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn folnewt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses and validates a space document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn folnewt_space_from_json(json: *const c_char, out: *mut *mut FolnewtSpace) -> FolnewtStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return FolnewtStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match load_space_json(text) {
            Ok(atlas) => {
                *out = Box::into_raw(Box::new(FolnewtSpace {
                    source: text.to_string(),
                    atlas,
                }));
                FolnewtStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                FolnewtStatus::InvalidInput
            }
        }
    })
}

/// # Safety
/// `space` must come from `folnewt_space_from_json` and not be freed yet;
/// NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn folnewt_space_free(space: *mut FolnewtSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Number of divisor variables of the root chart.
///
/// # Safety
/// `space` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn folnewt_space_divisor_len(space: *const FolnewtSpace) -> usize {
    space.as_ref().map_or(0, |s| s.atlas.root().divisor().len())
}

/// Decides Newton non-degeneracy by one route: `Ok` for non-degenerate,
/// `Negative` for degenerate, `Undetermined` when fuel runs out.
///
/// # Safety
/// `space` must be a live handle; `options` may be NULL for defaults.
#[no_mangle]
pub unsafe extern "C" fn folnewt_check_nnd(
    space: *const FolnewtSpace,
    route: FolnewtRoute,
    options: *const FolnewtOptions,
) -> FolnewtStatus {
    guarded(|| {
        let Some(s) = space.as_ref() else {
            set_error("null space");
            return FolnewtStatus::NullArgument;
        };
        let opts = options.as_ref().copied().unwrap_or_else(|| folnewt_options_default());
        let budget = match opts.budget() {
            Ok(b) => b,
            Err(e) => {
                set_error(e);
                return FolnewtStatus::InvalidArgument;
            }
        };
        let v = match route {
            FolnewtRoute::Direct => check_nnd_direct(&s.atlas, &budget.fuel),
            FolnewtRoute::Theorem => check_nnd_via_theorem(&s.atlas, opts.strategy.into(), &budget),
        };
        verdict_status(&v)
    })
}

/// Runs a CLI command on the space and hands back its JSON report in
/// `report` (may be NULL if the report is not wanted). The status mirrors
/// the command's exit code.
///
/// # Safety
/// `space` must be a live handle; `options` may be NULL; `report`, if not
/// NULL, must be writable.
#[no_mangle]
pub unsafe extern "C" fn folnewt_run(
    space: *const FolnewtSpace,
    command: FolnewtCommand,
    options: *const FolnewtOptions,
    report: *mut *mut c_char,
) -> FolnewtStatus {
    guarded(|| {
        if !report.is_null() {
            *report = ptr::null_mut();
        }
        let Some(s) = space.as_ref() else {
            set_error("null space");
            return FolnewtStatus::NullArgument;
        };
        let opts = options.as_ref().copied().unwrap_or_else(|| folnewt_options_default());
        if let Err(e) = opts.budget() {
            set_error(e);
            return FolnewtStatus::InvalidArgument;
        }
        let strategy: Strategy = opts.strategy.into();
        let args = vec![
            "folnewt".to_string(),
            command.name().to_string(),
            "-".to_string(),
            format!("--fuel-spairs={}", opts.fuel_spairs),
            format!("--fuel-terms={}", opts.fuel_terms),
            format!("--fuel-blowups={}", opts.fuel_blowups),
            format!("--strategy={}", strategy.name()),
        ];
        let out = cli::run(args, || Ok(s.source.clone()));
        if out.report.is_none() {
            set_error(out.stderr.trim().to_string());
            return FolnewtStatus::InvalidInput;
        }
        if !out.stderr.is_empty() {
            set_error(out.stderr.trim().to_string());
        }
        if !report.is_null() {
            *report = into_c(out.stdout.trim_end().to_string());
        }
        status_of(out.code)
    })
}

/// # Safety
/// `s` must come from this library and not be freed yet; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn folnewt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
