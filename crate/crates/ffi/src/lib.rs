//! C ABI over `gpk-core`.
//!
//! Groups and oracles are opaque heap handles released with their `_free`
//! function. Every call returns a [`GpkStatus`]; on failure the message is
//! kept per thread and can be copied out with [`gpk_last_error`]. Elements
//! and characters are passed as mixed-radix indices (last factor fastest).

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gpk_core::fbi::{is_fbi_spectral, is_fbi_structural, marker_selection, CandidateOrder};
use gpk_core::{
    gpk_closed_form, gpk_run, is_zero_sum, trial_rng, Character, CycloSum, Error, GroupSpec, Oracle,
};

/// Opaque finite Abelian group.
pub struct GpkGroup {
    spec: GroupSpec,
}

/// Opaque function table with an oracle-call counter.
pub struct GpkOracle {
    oracle: Oracle,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    GuardExceeded = 3,
    PromiseViolation = 4,
    ParseError = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpkCandidateMode {
    Ascending = 0,
    Shuffled = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> GpkStatus {
    match e {
        Error::GuardExceeded { .. } | Error::GroupTooLarge => GpkStatus::GuardExceeded,
        Error::CandidatesExhausted { .. } | Error::NotTerminated => GpkStatus::PromiseViolation,
        Error::Json(_) | Error::MalformedTable(_) => GpkStatus::ParseError,
        _ => GpkStatus::InvalidArgument,
    }
}

/// Runs `f`, mapping errors and panics to a status.
fn guard(f: impl FnOnce() -> Result<(), (GpkStatus, String)>) -> GpkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GpkStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            GpkStatus::Panic
        }
    }
}

fn core<T>(r: gpk_core::Result<T>) -> Result<T, (GpkStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), (GpkStatus, String)> {
    if p.is_null() {
        Err((GpkStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// Copies the calling thread's last error message into `buf` as a
/// NUL-terminated string, truncating if needed. Returns the full message
/// length in bytes, excluding the terminator.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn gpk_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Builds the group `Z/orders[0] x ... x Z/orders[len-1]`.
///
/// # Safety
/// `orders` must point to `len` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gpk_group_new(
    orders: *const usize,
    len: usize,
    out: *mut *mut GpkGroup,
) -> GpkStatus {
    guard(|| {
        non_null(orders, "orders")?;
        non_null(out, "out")?;
        let orders = std::slice::from_raw_parts(orders, len);
        let spec = core(GroupSpec::new(orders))?;
        *out = Box::into_raw(Box::new(GpkGroup { spec }));
        Ok(())
    })
}

/// # Safety
/// `group` must be null or a handle from [`gpk_group_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gpk_group_free(group: *mut GpkGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpk_group_order(group: *const GpkGroup, out: *mut usize) -> GpkStatus {
    guard(|| {
        non_null(group, "group")?;
        non_null(out, "out")?;
        *out = (*group).spec.order();
        Ok(())
    })
}

/// Least common multiple of the factor orders.
///
/// # Safety
/// `group` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpk_group_exponent(group: *const GpkGroup, out: *mut usize) -> GpkStatus {
    guard(|| {
        non_null(group, "group")?;
        non_null(out, "out")?;
        *out = (*group).spec.exponent();
        Ok(())
    })
}

/// Oracle `f: domain -> codomain` with `f(i) = table[i]`, all as indices.
/// The groups are copied; their handles stay owned by the caller.
///
/// # Safety
/// Both groups must be live handles, `table` must point to `len` readable
/// values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gpk_oracle_from_table(
    domain: *const GpkGroup,
    codomain: *const GpkGroup,
    table: *const usize,
    len: usize,
    out: *mut *mut GpkOracle,
) -> GpkStatus {
    guard(|| {
        non_null(domain, "domain")?;
        non_null(codomain, "codomain")?;
        non_null(table, "table")?;
        non_null(out, "out")?;
        let table = std::slice::from_raw_parts(table, len).to_vec();
        let oracle = core(Oracle::from_indices(
            &(*domain).spec,
            &(*codomain).spec,
            table,
        ))?;
        *out = Box::into_raw(Box::new(GpkOracle { oracle }));
        Ok(())
    })
}

/// Oracle from the JSON table format (`orders_G`, `orders_H`, `table`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpk_oracle_from_json(
    json: *const c_char,
    out: *mut *mut GpkOracle,
) -> GpkStatus {
    guard(|| {
        non_null(json, "json")?;
        non_null(out, "out")?;
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| (GpkStatus::ParseError, "json is not UTF-8".to_string()))?;
        let oracle = core(Oracle::from_json(text))?;
        *out = Box::into_raw(Box::new(GpkOracle { oracle }));
        Ok(())
    })
}

/// # Safety
/// `oracle` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gpk_oracle_free(oracle: *mut GpkOracle) {
    if !oracle.is_null() {
        drop(Box::from_raw(oracle));
    }
}

/// Oracle calls made through this handle so far.
///
/// # Safety
/// `oracle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpk_oracle_calls(oracle: *const GpkOracle, out: *mut u64) -> GpkStatus {
    guard(|| {
        non_null(oracle, "oracle")?;
        non_null(out, "out")?;
        *out = (*oracle).oracle.calls();
        Ok(())
    })
}

/// # Safety
/// `oracle` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gpk_oracle_reset_calls(oracle: *mut GpkOracle) -> GpkStatus {
    guard(|| {
        non_null(oracle, "oracle")?;
        (*oracle).oracle.reset_calls();
        Ok(())
    })
}

/// One simulated phase kick-back run with marker `chi_marker`; writes the
/// measured domain index. Counts one oracle call.
///
/// # Safety
/// `oracle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gpk_run_once(
    oracle: *mut GpkOracle,
    marker: usize,
    seed: u64,
    out: *mut usize,
) -> GpkStatus {
    guard(|| {
        non_null(oracle, "oracle")?;
        non_null(out, "out")?;
        let o = &mut (*oracle).oracle;
        let chi = core(Character::from_index(o.codomain(), marker))?;
        let run = core(gpk_run(o, &chi, &mut trial_rng(seed, 0)))?;
        *out = core(o.domain().index_of(&run.measured))?;
        Ok(())
    })
}

/// Closed-form amplitude `alpha_z` for marker `chi_marker`. No call is
/// counted.
///
/// # Safety
/// `oracle` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gpk_closed_form_amplitude(
    oracle: *const GpkOracle,
    marker: usize,
    z: usize,
    re: *mut f64,
    im: *mut f64,
) -> GpkStatus {
    guard(|| {
        non_null(oracle, "oracle")?;
        non_null(re, "re")?;
        non_null(im, "im")?;
        let o = &(*oracle).oracle;
        let chi = core(Character::from_index(o.codomain(), marker))?;
        let z = core(o.domain().element_at(z))?;
        let a = core(gpk_closed_form(o, &chi, &z))?;
        *re = a.re;
        *im = a.im;
        Ok(())
    })
}

/// Spectral and structural FBI tests on the table.
///
/// # Safety
/// `oracle` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn gpk_is_fbi(
    oracle: *const GpkOracle,
    spectral: *mut bool,
    structural: *mut bool,
) -> GpkStatus {
    guard(|| {
        non_null(oracle, "oracle")?;
        non_null(spectral, "spectral")?;
        non_null(structural, "structural")?;
        let o = &(*oracle).oracle;
        *spectral = is_fbi_spectral(o);
        *structural = is_fbi_structural(o);
        Ok(())
    })
}

/// Marker selection on an FBI oracle. Writes `|img(f)|` and the number of
/// phase kick-back calls this run used. `seed` drives both the shuffle
/// (in [`GpkCandidateMode::Shuffled`]) and measurement sampling.
///
/// # Safety
/// `oracle` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn gpk_marker_selection(
    oracle: *mut GpkOracle,
    mode: GpkCandidateMode,
    seed: u64,
    image_order: *mut usize,
    calls: *mut u64,
) -> GpkStatus {
    guard(|| {
        non_null(oracle, "oracle")?;
        non_null(image_order, "image_order")?;
        non_null(calls, "calls")?;
        let order = match mode {
            GpkCandidateMode::Ascending => CandidateOrder::Ascending,
            GpkCandidateMode::Shuffled => CandidateOrder::Shuffled { seed },
        };
        let sel = core(marker_selection(
            &mut (*oracle).oracle,
            &order,
            &mut trial_rng(seed, 0),
        ))?;
        *image_order = sel.image_order;
        *calls = sel.ledger.calls;
        Ok(())
    })
}

/// Decides exactly whether `sum_k counts[k] * zeta_modulus^k` vanishes,
/// where `modulus` is the number of counts.
///
/// # Safety
/// `counts` must point to `modulus` readable values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn gpk_is_zero_sum(
    counts: *const i64,
    modulus: usize,
    out: *mut bool,
) -> GpkStatus {
    guard(|| {
        non_null(counts, "counts")?;
        non_null(out, "out")?;
        if modulus == 0 {
            return Err((
                GpkStatus::InvalidArgument,
                "modulus must be positive".into(),
            ));
        }
        let counts = std::slice::from_raw_parts(counts, modulus).to_vec();
        *out = is_zero_sum(&CycloSum::from_counts(counts));
        Ok(())
    })
}
