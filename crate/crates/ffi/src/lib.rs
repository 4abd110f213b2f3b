//! C interface to the `maturity` library.
//!
//! Priors live behind an opaque `MaturityPrior` handle. Every function
//! returns a [`MaturityStatus`]; on failure a message is available from
//! [`maturity_last_error_message`] on the same thread. Rationals cross the
//! boundary as `"num/den"` strings that the caller releases with
//! [`maturity_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use maturity::classify::{second_order_class, tightness_class, TiesPolicy, Verdict};
use maturity::extend::ExtendError;
use maturity::model::{predictive_one, sequence_probability, streak_hazard, HistorySummary, ModelError};
use maturity::numeric::{parse_rational, Rational};
use maturity::prior::{GammaPrior, PmfFile};
use maturity::report::{classify_report, extend_report, ExtendRequest};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaturityStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    ZeroProbabilityHistory = 4,
    HistoryFull = 5,
    ApproximatePrior = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaturityVerdict {
    Tighter = 0,
    Looser = 1,
    BinomialBoundary = 2,
    Mixed = 3,
    NotSymmetric = 4,
    Indeterminate = 5,
}

impl From<Verdict> for MaturityVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Tighter => MaturityVerdict::Tighter,
            Verdict::Looser => MaturityVerdict::Looser,
            Verdict::BinomialBoundary => MaturityVerdict::BinomialBoundary,
            Verdict::Mixed => MaturityVerdict::Mixed,
            Verdict::NotSymmetric => MaturityVerdict::NotSymmetric,
            Verdict::Indeterminate => MaturityVerdict::Indeterminate,
        }
    }
}

/// Opaque prior handle.
pub struct MaturityPrior(GammaPrior);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

struct Failure(MaturityStatus, String);

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure(MaturityStatus::InvalidArgument, message.to_string())
    }
}

impl From<ModelError> for Failure {
    fn from(err: ModelError) -> Self {
        let status = match err {
            ModelError::ZeroProbabilityHistory { .. } => MaturityStatus::ZeroProbabilityHistory,
            ModelError::HistoryFull { .. } => MaturityStatus::HistoryFull,
            _ => MaturityStatus::InvalidArgument,
        };
        Failure(status, err.to_string())
    }
}

impl From<ExtendError> for Failure {
    fn from(err: ExtendError) -> Self {
        let status = match err {
            ExtendError::ApproximatePrior => MaturityStatus::ApproximatePrior,
            ExtendError::ZeroExtension => MaturityStatus::InvalidArgument,
            _ => MaturityStatus::Internal,
        };
        Failure(status, err.to_string())
    }
}

/// Runs `body`, converting errors and panics into a status plus message.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> MaturityStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            MaturityStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MaturityStatus::Internal
        }
    }
}

unsafe fn text_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(Failure(MaturityStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| Failure(MaturityStatus::ParseError, format!("{name} is not UTF-8")))
}

unsafe fn rational_arg(ptr: *const c_char, name: &str) -> Result<Rational, Failure> {
    let text = text_arg(ptr, name)?;
    parse_rational(text).map_err(|e| Failure(MaturityStatus::ParseError, format!("{name}: {e}")))
}

unsafe fn prior_ref<'a>(handle: *const MaturityPrior) -> Result<&'a GammaPrior, Failure> {
    handle.as_ref().map(|h| &h.0).ok_or_else(|| Failure(MaturityStatus::NullPointer, "prior handle is null".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(MaturityStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let c = CString::new(text).map_err(|_| Failure(MaturityStatus::Internal, "string contains NUL".into()))?;
    write_out(out, c.into_raw())
}

unsafe fn write_prior(
    out: *mut *mut MaturityPrior,
    prior: Result<GammaPrior, maturity::prior::PriorError>,
) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(MaturityStatus::NullPointer, "output pointer is null".into()));
    }
    let prior = prior.map_err(Failure::invalid)?;
    out.write(Box::into_raw(Box::new(MaturityPrior(prior))));
    Ok(())
}

/// Binomial(n, p) with `p` given as a rational string such as "1/3".
///
/// # Safety
/// `p` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn maturity_prior_binomial(n: usize, p: *const c_char, out: *mut *mut MaturityPrior) -> MaturityStatus {
    guard(|| {
        let p = rational_arg(p, "p")?;
        write_prior(out, GammaPrior::from_binomial(n, &p))
    })
}

/// Beta-Binomial(n, alpha, beta).
///
/// # Safety
/// String arguments must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_prior_beta_binomial(
    n: usize,
    alpha: *const c_char,
    beta: *const c_char,
    out: *mut *mut MaturityPrior,
) -> MaturityStatus {
    guard(|| {
        let (alpha, beta) = (rational_arg(alpha, "alpha")?, rational_arg(beta, "beta")?);
        write_prior(out, GammaPrior::from_beta_binomial(n, &alpha, &beta))
    })
}

/// CMP-Binomial(n, p, nu) at the default precision.
///
/// # Safety
/// String arguments must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_prior_cmp(
    n: usize,
    p: *const c_char,
    nu: *const c_char,
    out: *mut *mut MaturityPrior,
) -> MaturityStatus {
    guard(|| {
        let (p, nu) = (rational_arg(p, "p")?, rational_arg(nu, "nu")?);
        write_prior(out, GammaPrior::from_cmp_binomial(n, &p, &nu))
    })
}

/// Count of ones among `n` members drawn from `total` members with `ones`
/// ones.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_prior_hypergeometric(
    total: usize,
    ones: usize,
    n: usize,
    out: *mut *mut MaturityPrior,
) -> MaturityStatus {
    guard(|| write_prior(out, GammaPrior::from_hypergeometric(total, ones, n)))
}

/// Point mass at `g`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_prior_degenerate(n: usize, g: usize, out: *mut *mut MaturityPrior) -> MaturityStatus {
    guard(|| write_prior(out, GammaPrior::from_degenerate(n, g)))
}

/// Uniform on 0..=n.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_prior_uniform(n: usize, out: *mut *mut MaturityPrior) -> MaturityStatus {
    guard(|| write_prior(out, GammaPrior::uniform(n)))
}

/// Prior from a JSON document `{"N": .., "pmf": ["num/den", ..]}`.
///
/// # Safety
/// `json` must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_prior_from_json(json: *const c_char, out: *mut *mut MaturityPrior) -> MaturityStatus {
    guard(|| {
        let text = text_arg(json, "json")?;
        let prior = PmfFile::parse(text).map_err(|e| Failure(MaturityStatus::ParseError, e.to_string()))?;
        write_prior(out, Ok(prior))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `prior` must come from a constructor above and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn maturity_prior_free(prior: *mut MaturityPrior) {
    if !prior.is_null() {
        drop(Box::from_raw(prior));
    }
}

/// Population size N.
///
/// # Safety
/// `prior` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_prior_size(prior: *const MaturityPrior, out: *mut usize) -> MaturityStatus {
    guard(|| write_out(out, prior_ref(prior)?.size()))
}

/// Nonzero when the prior holds exact probabilities.
///
/// # Safety
/// `prior` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_prior_is_exact(prior: *const MaturityPrior, out: *mut i32) -> MaturityStatus {
    guard(|| write_out(out, prior_ref(prior)?.is_exact() as i32))
}

/// P(next = 1 | `s` ones in `n` trials) as a `"num/den"` string.
///
/// # Safety
/// `prior` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_predictive(
    prior: *const MaturityPrior,
    n: usize,
    s: usize,
    out: *mut *mut c_char,
) -> MaturityStatus {
    guard(|| {
        let prior = prior_ref(prior)?;
        let h = HistorySummary::checked(n, s).ok_or_else(|| Failure::invalid("s exceeds n"))?;
        write_string(out, predictive_one(prior, h)?.to_string())
    })
}

/// Probability of one particular sequence with `s` ones in `n` trials.
///
/// # Safety
/// `prior` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_sequence_probability(
    prior: *const MaturityPrior,
    n: usize,
    s: usize,
    out: *mut *mut c_char,
) -> MaturityStatus {
    guard(|| {
        let prior = prior_ref(prior)?;
        let h = HistorySummary::checked(n, s).ok_or_else(|| Failure::invalid("s exceeds n"))?;
        write_string(out, sequence_probability(prior, h)?.to_string())
    })
}

/// Streak hazard r(m).
///
/// # Safety
/// `prior` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_streak_hazard(prior: *const MaturityPrior, m: usize, out: *mut *mut c_char) -> MaturityStatus {
    guard(|| write_string(out, streak_hazard(prior_ref(prior)?, m)?.to_string()))
}

/// First-order tightness against Binomial(N, 1/2).
///
/// # Safety
/// `prior` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_tightness(prior: *const MaturityPrior, out: *mut MaturityVerdict) -> MaturityStatus {
    guard(|| write_out(out, tightness_class(prior_ref(prior)?).verdict.into()))
}

/// Second-order tightness against the Binomial.
///
/// # Safety
/// `prior` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_second_order(prior: *const MaturityPrior, out: *mut MaturityVerdict) -> MaturityStatus {
    guard(|| write_out(out, second_order_class(prior_ref(prior)?).verdict.into()))
}

/// Full classification report as JSON.
///
/// # Safety
/// `prior` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_classify_json(prior: *const MaturityPrior, out: *mut *mut c_char) -> MaturityStatus {
    guard(|| {
        let report = classify_report(prior_ref(prior)?, TiesPolicy::Strict);
        let text = serde_json::to_string(&report).map_err(|e| Failure(MaturityStatus::Internal, e.to_string()))?;
        write_string(out, text)
    })
}

/// Extendibility profile for M = 1..=`max_extra` as JSON.
///
/// # Safety
/// `prior` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn maturity_extend_json(
    prior: *const MaturityPrior,
    max_extra: usize,
    out: *mut *mut c_char,
) -> MaturityStatus {
    guard(|| {
        let report = extend_report(prior_ref(prior)?, ExtendRequest::Profile(max_extra))?;
        let text = serde_json::to_string(&report).map_err(|e| Failure(MaturityStatus::Internal, e.to_string()))?;
        write_string(out, text)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `text` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn maturity_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Message for the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn maturity_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}
