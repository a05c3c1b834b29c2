//! C ABI over `k4rep`.
//!
//! Representations live behind the opaque [`K4Rep`] handle. Every function
//! returns a [`K4Status`]; on failure a message is kept per thread and read
//! with [`k4_last_error_message`]. Handles from `k4_rep_*` constructors are
//! released with [`k4_rep_free`], strings with [`k4_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use k4rep::classify::{self, ClassifyError};
use k4rep::f2poly::{Automorphism, F2Poly, PolyError};
use k4rep::quiver::{self, QuiverError};
use k4rep::reps::{self, Character, Family, Position, RepError, Representation};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K4Status {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotARepresentation = 3,
    /// The representation fails the divisibility condition, so it has no dimension vector.
    NoDimensionVector = 4,
    CapExceeded = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

/// Opaque integral representation of the Klein four-group.
pub struct K4Rep(Representation);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

struct Failure(K4Status, String);

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        let code = match e {
            RepError::NotARepresentation(_) => K4Status::NotARepresentation,
            _ => K4Status::InvalidArgument,
        };
        Failure(code, e.to_string())
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        Failure(K4Status::InvalidArgument, e.to_string())
    }
}

impl From<QuiverError> for Failure {
    fn from(e: QuiverError) -> Self {
        let code = match e {
            QuiverError::Lemma1Violation(..) => K4Status::NoDimensionVector,
            _ => K4Status::Internal,
        };
        Failure(code, e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        if e.is_cap_exceeded() {
            return Failure(K4Status::CapExceeded, e.to_string());
        }
        match e {
            ClassifyError::DegreeMismatch(..) | ClassifyError::TooLarge(_) => Failure(K4Status::InvalidArgument, e.to_string()),
            ClassifyError::Quiver(q) => q.into(),
            ClassifyError::Rep(r) => r.into(),
            ClassifyError::Poly(p) => p.into(),
            other => Failure(K4Status::Internal, other.to_string()),
        }
    }
}

/// Runs `f`, recording failures and panics in the thread-local error slot.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> K4Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            K4Status::Ok
        }
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            K4Status::Internal
        }
    }
}

fn null() -> Failure {
    Failure(K4Status::NullPointer, "null pointer argument".into())
}

unsafe fn rep_ref<'a>(p: *const K4Rep) -> Result<&'a Representation, Failure> {
    p.as_ref().map(|r| &r.0).ok_or_else(null)
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(K4Status::InvalidArgument, "string is not UTF-8".into()))
}

unsafe fn store<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn store_rep(out: *mut *mut K4Rep, rep: Representation) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(K4Rep(rep))));
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn k4_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a fixed-layout family member. `family` is one of `Delta_n`, `W_0`,
/// `W_n`, `T_n`, `Delta_n1`, `regular`, `chi1`..`chi4`.
///
/// # Safety
/// `family` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_construct(family: *const c_char, n: u32, out: *mut *mut K4Rep) -> K4Status {
    guard(|| {
        let fam: Family = text(family)?.parse()?;
        store_rep(out, reps::construct(fam, n as usize)?)
    })
}

/// Builds `Δ_f` with the companion block of `f` at `position` (11, 12, 21 or 22).
/// `f` is a bit string, lowest degree first, or human notation like `x^2+x+1`.
///
/// # Safety
/// `f` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_construct_f(f: *const c_char, position: u32, out: *mut *mut K4Rep) -> K4Status {
    guard(|| {
        let poly: F2Poly = text(f)?.parse()?;
        let pos: Position = position.to_string().parse()?;
        store_rep(out, reps::construct_delta_f(poly, pos)?)
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_from_json(json: *const c_char, out: *mut *mut K4Rep) -> K4Status {
    guard(|| store_rep(out, Representation::from_json(text(json)?)?))
}

/// Writes a newly allocated JSON string; release it with [`k4_string_free`].
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_to_json(rep: *const K4Rep, out: *mut *mut c_char) -> K4Status {
    guard(|| {
        let s = CString::new(rep_ref(rep)?.to_json()).map_err(|e| Failure(K4Status::Internal, e.to_string()))?;
        store(out, s.into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn k4_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `rep` must come from this library and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_free(rep: *mut K4Rep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_degree(rep: *const K4Rep, out: *mut usize) -> K4Status {
    guard(|| store(out, rep_ref(rep)?.degree()))
}

/// Copies the row-major image of generator `g` (0 for `a`, 1 for `b`) into
/// `buf`, which must hold `degree²` entries.
///
/// # Safety
/// `rep` must be a live handle and `buf` writable for `len` entries.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_generator(rep: *const K4Rep, g: u32, buf: *mut i64, len: usize) -> K4Status {
    guard(|| {
        let r = rep_ref(rep)?;
        let m = match g {
            0 => r.a(),
            1 => r.b(),
            _ => return Err(Failure(K4Status::InvalidArgument, format!("generator {g} is not 0 or 1"))),
        };
        let entries = m.entries();
        if buf.is_null() {
            return Err(null());
        }
        if len < entries.len() {
            return Err(Failure(K4Status::BufferTooSmall, format!("need {} entries, got {len}", entries.len())));
        }
        ptr::copy_nonoverlapping(entries.as_ptr(), buf, entries.len());
        Ok(())
    })
}

/// Writes `(d0, d1, d2, d3, d4)` to `out[0..5]`.
///
/// # Safety
/// `rep` must be a live handle and `out` writable for 5 entries.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_dimension_vector(rep: *const K4Rep, out: *mut u64) -> K4Status {
    guard(|| {
        let (d, _) = quiver::dimension_vector(rep_ref(rep)?)?;
        if out.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(d.0.as_ptr(), out, 5);
        Ok(())
    })
}

/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_is_indecomposable(rep: *const K4Rep, out: *mut bool) -> K4Status {
    guard(|| store(out, classify::is_indecomposable(rep_ref(rep)?)?))
}

/// Equivalence over the 2-adic and 2-local integers.
///
/// # Safety
/// `r1`, `r2` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_equivalent_local(r1: *const K4Rep, r2: *const K4Rep, out: *mut bool) -> K4Status {
    guard(|| store(out, classify::equivalent_local(rep_ref(r1)?, rep_ref(r2)?)?))
}

/// Stabilizer as a 6-bit mask over `id, s1, s2, s1.s2, s2.s1, s1.s2.s1`.
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_stabilizer_mask(rep: *const K4Rep, out: *mut u8) -> K4Status {
    guard(|| store(out, classify::stabilizer(rep_ref(rep)?)?.mask()))
}

/// `Γ^φ` for an automorphism word such as `s1.s2`.
///
/// # Safety
/// `rep` must be a live handle, `word` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_conjugate(rep: *const K4Rep, word: *const c_char, out: *mut *mut K4Rep) -> K4Status {
    guard(|| {
        let phi = Automorphism::parse_word(text(word)?)?;
        store_rep(out, reps::conjugate(rep_ref(rep)?, phi))
    })
}

/// The contragredient `Γ*`.
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_dual(rep: *const K4Rep, out: *mut *mut K4Rep) -> K4Status {
    guard(|| store_rep(out, reps::contragredient(rep_ref(rep)?)))
}

/// `Γ ⊗ χ_k` for `k` in 1..=4.
///
/// # Safety
/// `rep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn k4_rep_tensor(rep: *const K4Rep, k: u32, out: *mut *mut K4Rep) -> K4Status {
    guard(|| {
        let chi: Character = format!("chi{k}").parse()?;
        store_rep(out, reps::tensor_character(rep_ref(rep)?, chi))
    })
}
