//! C ABI over the argeo engines.
//!
//! Every call returns an [`ArgeoStatus`]; on failure the message is kept
//! per thread and read with [`argeo_last_error`]. Strings handed out by the
//! library are released with [`argeo_string_free`], programs with
//! [`argeo_program_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use argeo::af::{self, Semantics};
use argeo::aspic::{self, construct_arguments_with_budget, AttackKind, Saf};
use argeo::correspondence::verify_equivalence;
use argeo::delp::Delp;
use argeo::delp_gr;
use argeo::parse::parse_program;
use argeo::postulates::{audit_table, Engine};
use argeo::program::{Literal, Program};

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArgeoStatus {
    Ok = 0,
    /// A required pointer was null.
    NullArgument = 1,
    /// A string argument was not UTF-8, or an enum value was out of range.
    InvalidArgument = 2,
    /// The program text or a literal did not parse.
    Parse = 3,
    /// An engine limit or precondition failed.
    Engine = 4,
    /// A bug: the library panicked.
    Internal = 5,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArgeoAttack {
    Rebut = 0,
    URebut = 1,
    DlpRebut = 2,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArgeoSemantics {
    Grounded = 0,
    Complete = 1,
    Preferred = 2,
    Stable = 3,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArgeoWarrantEngine {
    Delp = 0,
    DelpGr = 1,
}

/// A parsed program. Opaque.
pub struct ArgeoProgram {
    program: Program,
    budget: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ArgeoStatus, String);

impl From<argeo::error::EngineError> for Failure {
    fn from(e: argeo::error::EngineError) -> Self {
        Failure(ArgeoStatus::Engine, e.to_string())
    }
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ArgeoStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ArgeoStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error".into());
            ArgeoStatus::Internal
        }
    }
}

unsafe fn cstr<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(
            ArgeoStatus::NullArgument,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(ArgeoStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const ArgeoProgram) -> Result<&'a ArgeoProgram, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(ArgeoStatus::NullArgument, "program is null".into()))
}

unsafe fn parse_goal(s: *const c_char) -> Result<Literal, Failure> {
    cstr(s, "goal")?
        .parse()
        .map_err(|e: argeo::program::ProgramError| Failure(ArgeoStatus::Parse, e.to_string()))
}

fn out<T>(p: *mut T) -> Result<&'static mut T, Failure> {
    // SAFETY: callers pass a writable location or null
    unsafe { p.as_mut() }.ok_or_else(|| Failure(ArgeoStatus::NullArgument, "output is null".into()))
}

fn give(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

// Enum parameters arrive as plain integers so that a stray value is an
// error rather than undefined behaviour.
fn invalid(what: &str, v: i32) -> Failure {
    Failure(
        ArgeoStatus::InvalidArgument,
        format!("{what} {v} is out of range"),
    )
}

fn attack_kind(a: i32) -> Result<AttackKind, Failure> {
    Ok(match a {
        x if x == ArgeoAttack::Rebut as i32 => AttackKind::Rebut,
        x if x == ArgeoAttack::URebut as i32 => AttackKind::URebut,
        x if x == ArgeoAttack::DlpRebut as i32 => AttackKind::DlpRebut,
        _ => return Err(invalid("attack", a)),
    })
}

fn semantics_of(s: i32) -> Result<Semantics, Failure> {
    Ok(match s {
        x if x == ArgeoSemantics::Grounded as i32 => Semantics::Grounded,
        x if x == ArgeoSemantics::Complete as i32 => Semantics::Complete,
        x if x == ArgeoSemantics::Preferred as i32 => Semantics::Preferred,
        x if x == ArgeoSemantics::Stable as i32 => Semantics::Stable,
        _ => return Err(invalid("semantics", s)),
    })
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn argeo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version; static, never freed.
#[no_mangle]
pub extern "C" fn argeo_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `text` into a new program stored in `*out_program`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out_program` must be writable.
#[no_mangle]
pub unsafe extern "C" fn argeo_program_parse(
    text: *const c_char,
    out_program: *mut *mut ArgeoProgram,
) -> ArgeoStatus {
    guard(|| {
        let slot = out(out_program)?;
        *slot = ptr::null_mut();
        let program = parse_program(cstr(text, "text")?)
            .map_err(|e| Failure(ArgeoStatus::Parse, e.to_string()))?;
        *slot = Box::into_raw(Box::new(ArgeoProgram {
            program,
            budget: aspic::DEFAULT_ARGUMENT_BUDGET,
        }));
        Ok(())
    })
}

/// # Safety
/// `program` must come from [`argeo_program_parse`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn argeo_program_free(program: *mut ArgeoProgram) {
    if !program.is_null() {
        drop(Box::from_raw(program));
    }
}

/// Caps the number of ASPIC+ arguments constructed for this program.
///
/// # Safety
/// `program` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn argeo_program_set_budget(
    program: *mut ArgeoProgram,
    budget: usize,
) -> ArgeoStatus {
    guard(|| {
        out(program)?.budget = budget;
        Ok(())
    })
}

/// The program in normal form; free with [`argeo_string_free`].
///
/// # Safety
/// `program` must be a live handle; `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn argeo_program_print(
    program: *const ArgeoProgram,
    out_text: *mut *mut c_char,
) -> ArgeoStatus {
    guard(|| {
        let p = handle(program)?;
        *out(out_text)? = give(argeo::parse::print_program(&p.program));
        Ok(())
    })
}

/// Whether `goal` is warranted; `engine` is an [`ArgeoWarrantEngine`].
///
/// # Safety
/// `program` must be a live handle, `goal` NUL-terminated, `out_warranted` writable.
#[no_mangle]
pub unsafe extern "C" fn argeo_warrant(
    program: *const ArgeoProgram,
    goal: *const c_char,
    engine: i32,
    out_warranted: *mut bool,
) -> ArgeoStatus {
    guard(|| {
        let p = handle(program)?;
        let g = parse_goal(goal)?;
        let delp = Delp::new(&p.program)?;
        *out(out_warranted)? = match engine {
            x if x == ArgeoWarrantEngine::Delp as i32 => delp.warrant(&g).warranted,
            x if x == ArgeoWarrantEngine::DelpGr as i32 => {
                let f = delp_gr::delp_framework(&delp);
                delp_gr::warrant_in(&delp, &f, &g).warranted
            }
            _ => return Err(invalid("engine", engine)),
        };
        Ok(())
    })
}

/// Whether some ASPIC+ argument for `goal` is in every (`sceptical`) or
/// some extension. `attack` and `semantics` are [`ArgeoAttack`] and
/// [`ArgeoSemantics`] values.
///
/// # Safety
/// As for [`argeo_warrant`].
#[no_mangle]
pub unsafe extern "C" fn argeo_justified(
    program: *const ArgeoProgram,
    goal: *const c_char,
    attack: i32,
    semantics: i32,
    sceptical: bool,
    out_justified: *mut bool,
) -> ArgeoStatus {
    guard(|| {
        let p = handle(program)?;
        let g = parse_goal(goal)?;
        let saf = Saf::new(
            construct_arguments_with_budget(&p.program, p.budget)?,
            attack_kind(attack)?,
        )?;
        let exts = af::extensions(&saf.framework(), semantics_of(semantics)?)?;
        let for_goal: BTreeSet<usize> = saf
            .arguments()
            .with_conclusion(&g)
            .iter()
            .copied()
            .collect();
        let hit = |e: &af::Extension| !e.is_disjoint(&for_goal);
        *out(out_justified)? = if sceptical {
            exts.iter().all(hit)
        } else {
            exts.iter().any(hit)
        };
        Ok(())
    })
}

/// Extensions as conclusion sets, one `{a, b}` per line; free with
/// [`argeo_string_free`].
///
/// # Safety
/// `program` must be a live handle; `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn argeo_extensions(
    program: *const ArgeoProgram,
    attack: i32,
    semantics: i32,
    out_text: *mut *mut c_char,
) -> ArgeoStatus {
    guard(|| {
        let p = handle(program)?;
        let saf = Saf::new(
            construct_arguments_with_budget(&p.program, p.budget)?,
            attack_kind(attack)?,
        )?;
        let mut s = String::new();
        for e in af::extensions(&saf.framework(), semantics_of(semantics)?)? {
            let lits: Vec<String> = aspic::conclusions(saf.arguments(), &e)
                .iter()
                .map(Literal::to_string)
                .collect();
            s += &format!("{{{}}}\n", lits.join(", "));
        }
        *out(out_text)? = give(s);
        Ok(())
    })
}

/// The postulate table (tab-separated) for the grounded ASPIC+ engines and
/// both DeLP engines; free with [`argeo_string_free`].
///
/// # Safety
/// `program` must be a live handle; `out_text` writable.
#[no_mangle]
pub unsafe extern "C" fn argeo_postulates(
    program: *const ArgeoProgram,
    out_text: *mut *mut c_char,
) -> ArgeoStatus {
    guard(|| {
        let p = handle(program)?;
        let mut engines: Vec<Engine> = AttackKind::ALL
            .iter()
            .map(|&k| Engine::Aspic(k, Semantics::Grounded))
            .collect();
        engines.extend([Engine::Delp, Engine::DelpGr]);
        *out(out_text)? = give(audit_table(&p.program, &engines, p.budget));
        Ok(())
    })
}

/// Number of DeLP arguments whose grounded warrant disagrees with grounded
/// ASPIC+ justification under the pairing named by `attack`. Fails with
/// [`ArgeoStatus::Engine`] on programs that are not simplified.
///
/// # Safety
/// `program` must be a live handle; `out_count` writable.
#[no_mangle]
pub unsafe extern "C" fn argeo_compare(
    program: *const ArgeoProgram,
    attack: i32,
    out_count: *mut usize,
) -> ArgeoStatus {
    guard(|| {
        let p = handle(program)?;
        *out(out_count)? = verify_equivalence(&p.program, attack_kind(attack)?)?.discrepancies();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn argeo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
