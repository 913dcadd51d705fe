//! C ABI over `necksum`.
//!
//! Every fallible call returns a [`NecksumStatus`] and writes its result
//! through an out pointer. Results are opaque handles owned by the caller
//! and released with the matching `*_free` function. After a failure,
//! `necksum_last_error_message` describes it until the next call on the
//! same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use necksum::bijection::{psi, psi_inverse};
use necksum::identities::{
    aggregate_difference, predict_equality, table_diff_grid, table_diff_sum, Condition, DiffTable,
};
use necksum::perms::{count_cvp, enumerate_cvp, Permutation};
use necksum::subsets::{count_s_short, count_sbar, enumerate_subsets, Universe};
use necksum::words::{
    count_coperiod_div, count_lplus, count_lyndon, count_necklaces, enumerate_coperiod_div, enumerate_lplus,
    enumerate_lyndon, enumerate_necklaces, BinaryWord,
};
use necksum::{Error, ExactInt};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NecksumStatus {
    Ok = 0,
    InvalidParameter = 1,
    ParseError = 2,
    NonExactDivision = 3,
    NotCoprime = 4,
    SearchExhausted = 5,
    ZNotCoprime = 6,
    NotCyclic = 7,
    ShapeViolation = 8,
    UnexpectedCoperiod = 9,
    NotInDomain = 10,
    AmbiguousAnchor = 11,
    GcdNotOne = 12,
    NullPointer = 100,
    Utf8 = 101,
    Overflow = 102,
    OutOfRange = 103,
    Panic = 199,
}

impl From<&Error> for NecksumStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidParameter(_) => NecksumStatus::InvalidParameter,
            Error::Parse(_) => NecksumStatus::ParseError,
            Error::NonExactDivision(_) => NecksumStatus::NonExactDivision,
            Error::NotCoprime { .. } => NecksumStatus::NotCoprime,
            Error::SearchExhausted { .. } => NecksumStatus::SearchExhausted,
            Error::ZNotCoprime { .. } => NecksumStatus::ZNotCoprime,
            Error::NotCyclic(_) => NecksumStatus::NotCyclic,
            Error::ShapeViolation { .. } => NecksumStatus::ShapeViolation,
            Error::UnexpectedCoperiod(_) => NecksumStatus::UnexpectedCoperiod,
            Error::NotInDomain { .. } => NecksumStatus::NotInDomain,
            Error::AmbiguousAnchor(_) => NecksumStatus::AmbiguousAnchor,
            Error::GcdNotOne { .. } => NecksumStatus::GcdNotOne,
        }
    }
}

/// Families accepted by `necksum_count` and `necksum_enumerate`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NecksumFamily {
    Necklaces = 0,
    Lyndon = 1,
    Coperiod = 2,
    Lplus = 3,
    Sbar = 4,
    S = 5,
    Cvp = 6,
}

/// Arbitrary-precision integer.
pub struct NecksumInt(ExactInt);

/// Owned list of strings.
pub struct NecksumList(Vec<CString>);

/// Difference table.
pub struct NecksumTable(DiffTable);

/// Outcome of the equality prediction. `conditions` has bit 0 set for
/// condition (a) through bit 4 for (e).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NecksumVerdict {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub predicted_equal: bool,
    pub conditions: u8,
    pub sign: i8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Fallible<T> = Result<T, (NecksumStatus, String)>;

fn lib_err(e: Error) -> (NecksumStatus, String) {
    (NecksumStatus::from(&e), format!("{}: {e}", e.name()))
}

/// Runs `body`, stores its result through `out`, and converts errors and
/// panics into status codes.
fn guard<T>(out: *mut T, body: impl FnOnce() -> Fallible<T>) -> NecksumStatus {
    clear_last_error();
    if out.is_null() {
        set_last_error("output pointer is null".into());
        return NecksumStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(v)) => {
            // SAFETY: checked non-null above; the caller provides writable storage.
            unsafe { out.write(v) };
            NecksumStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            NecksumStatus::Panic
        }
    }
}

fn read_str<'a>(p: *const c_char) -> Fallible<&'a str> {
    if p.is_null() {
        return Err((NecksumStatus::NullPointer, "string argument is null".into()));
    }
    // SAFETY: the caller passes a NUL-terminated string that outlives the call.
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|e| (NecksumStatus::Utf8, e.to_string()))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failure on this thread, or NULL. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn necksum_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static upper-case name of a status code.
#[no_mangle]
pub extern "C" fn necksum_status_name(status: NecksumStatus) -> *const c_char {
    let s: &'static CStr = match status {
        NecksumStatus::Ok => c"OK",
        NecksumStatus::InvalidParameter => c"INVALID_PARAMETER",
        NecksumStatus::ParseError => c"PARSE_ERROR",
        NecksumStatus::NonExactDivision => c"NON_EXACT_DIVISION",
        NecksumStatus::NotCoprime => c"NOT_COPRIME",
        NecksumStatus::SearchExhausted => c"SEARCH_EXHAUSTED",
        NecksumStatus::ZNotCoprime => c"Z_NOT_COPRIME",
        NecksumStatus::NotCyclic => c"NOT_CYCLIC",
        NecksumStatus::ShapeViolation => c"SHAPE_VIOLATION",
        NecksumStatus::UnexpectedCoperiod => c"UNEXPECTED_COPERIOD",
        NecksumStatus::NotInDomain => c"NOT_IN_DOMAIN",
        NecksumStatus::AmbiguousAnchor => c"AMBIGUOUS_ANCHOR",
        NecksumStatus::GcdNotOne => c"GCD_NOT_ONE",
        NecksumStatus::NullPointer => c"NULL_POINTER",
        NecksumStatus::Utf8 => c"UTF8",
        NecksumStatus::Overflow => c"OVERFLOW",
        NecksumStatus::OutOfRange => c"OUT_OF_RANGE",
        NecksumStatus::Panic => c"PANIC",
    };
    s.as_ptr()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn necksum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact size of a family. `k` and `r` are ignored where unused.
#[no_mangle]
pub extern "C" fn necksum_count(
    family: NecksumFamily,
    n: usize,
    k: usize,
    r: usize,
    out: *mut *mut NecksumInt,
) -> NecksumStatus {
    guard(out, || {
        let v = match family {
            NecksumFamily::Necklaces => count_necklaces(n, k),
            NecksumFamily::Lyndon => count_lyndon(n, k),
            NecksumFamily::Coperiod => count_coperiod_div(n, k, r),
            NecksumFamily::Lplus => count_lplus(n, k),
            NecksumFamily::Sbar => count_sbar(n, k, r),
            NecksumFamily::S => count_s_short(n, k, r),
            NecksumFamily::Cvp => count_cvp(n, k),
        }
        .map_err(lib_err)?;
        Ok(boxed(NecksumInt(v)))
    })
}

/// |N_r(n, k)| − |S̄_r(n, k)|, with r reduced mod n.
#[no_mangle]
pub extern "C" fn necksum_difference(
    n: usize,
    k: usize,
    r: usize,
    out: *mut *mut NecksumInt,
) -> NecksumStatus {
    guard(out, || {
        let v = predict_equality(n, k, r).map_err(lib_err)?.predicted_difference;
        Ok(boxed(NecksumInt(v)))
    })
}

/// The difference summed over all k.
#[no_mangle]
pub extern "C" fn necksum_aggregate_difference(
    n: usize,
    r: usize,
    out: *mut *mut NecksumInt,
) -> NecksumStatus {
    guard(out, || Ok(boxed(NecksumInt(aggregate_difference(n, r).map_err(lib_err)?))))
}

#[no_mangle]
pub extern "C" fn necksum_predict_equality(
    n: usize,
    k: usize,
    r: usize,
    out: *mut NecksumVerdict,
) -> NecksumStatus {
    guard(out, || {
        let v = predict_equality(n, k, r).map_err(lib_err)?;
        let conditions = v.matched_conditions.iter().fold(0u8, |acc, c| {
            acc | match c {
                Condition::A => 1,
                Condition::B => 2,
                Condition::C => 4,
                Condition::D => 8,
                Condition::E => 16,
            }
        });
        Ok(NecksumVerdict {
            n: v.n,
            k: v.k,
            r: v.r,
            predicted_equal: v.predicted_equal,
            conditions,
            sign: v.sign,
        })
    })
}

/// Decimal rendering; free with `necksum_string_free`.
///
/// # Safety
/// `value` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn necksum_int_to_string(
    value: *const NecksumInt,
    out: *mut *mut c_char,
) -> NecksumStatus {
    guard(out, || {
        let v = value.as_ref().ok_or((NecksumStatus::NullPointer, "integer handle is null".into()))?;
        Ok(c_string(v.0.to_string()))
    })
}

/// Fails with `OVERFLOW` if the value does not fit.
///
/// # Safety
/// `value` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn necksum_int_to_i64(value: *const NecksumInt, out: *mut i64) -> NecksumStatus {
    guard(out, || {
        let v = value.as_ref().ok_or((NecksumStatus::NullPointer, "integer handle is null".into()))?;
        i64::try_from(&v.0).map_err(|_| (NecksumStatus::Overflow, format!("{} does not fit in 64 bits", v.0)))
    })
}

/// # Safety
/// `value` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn necksum_int_free(value: *mut NecksumInt) {
    if !value.is_null() {
        drop(Box::from_raw(value));
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> NecksumList {
    NecksumList(items.into_iter().map(|x| CString::new(x.to_string()).expect("no interior NUL")).collect())
}

/// Members of a family in the library's order: words as bit strings,
/// subsets as `{a,b,c}`, permutations in one-line notation.
#[no_mangle]
pub extern "C" fn necksum_enumerate(
    family: NecksumFamily,
    n: usize,
    k: usize,
    r: usize,
    zero_based: bool,
    out: *mut *mut NecksumList,
) -> NecksumStatus {
    guard(out, || {
        let subsets =
            |u| enumerate_subsets(n, k, r, u).map(|v| strings(v.iter().map(|s| s.render(zero_based))));
        let list = match family {
            NecksumFamily::Necklaces => enumerate_necklaces(n, k).map(strings),
            NecksumFamily::Lyndon => enumerate_lyndon(n, k).map(strings),
            NecksumFamily::Coperiod => enumerate_coperiod_div(n, k, r).map(strings),
            NecksumFamily::Lplus => enumerate_lplus(n, k).map(strings),
            NecksumFamily::Sbar => subsets(Universe::Full),
            NecksumFamily::S => subsets(Universe::Short),
            NecksumFamily::Cvp => enumerate_cvp(n, k).map(strings),
        }
        .map_err(lib_err)?;
        Ok(boxed(list))
    })
}

/// # Safety
/// `list` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn necksum_list_len(list: *const NecksumList) -> usize {
    list.as_ref().map_or(0, |l| l.0.len())
}

/// Borrowed item, valid while the list lives; NULL when out of range.
///
/// # Safety
/// `list` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn necksum_list_get(list: *const NecksumList, index: usize) -> *const c_char {
    list.as_ref().and_then(|l| l.0.get(index)).map_or(ptr::null(), |c| c.as_ptr())
}

/// # Safety
/// `list` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn necksum_list_free(list: *mut NecksumList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Ψ image of a permutation given in one-line notation (`"54213"` or
/// `"5 4 2 1 3"`); writes the Lyndon word.
///
/// # Safety
/// `perm` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn necksum_psi(perm: *const c_char, k: usize, out: *mut *mut c_char) -> NecksumStatus {
    guard(out, || {
        let p: Permutation = read_str(perm)?.parse().map_err(lib_err)?;
        Ok(c_string(psi(&p, k).map_err(lib_err)?.to_string()))
    })
}

/// Inverse of Ψ; writes the permutation in one-line notation.
///
/// # Safety
/// `word` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn necksum_psi_inverse(
    word: *const c_char,
    n: usize,
    k: usize,
    out: *mut *mut c_char,
) -> NecksumStatus {
    guard(out, || {
        let w: BinaryWord = read_str(word)?.parse().map_err(lib_err)?;
        Ok(c_string(psi_inverse(&w, n, k).map_err(lib_err)?.to_string()))
    })
}

/// Rows m = 1..=m_max of differences at (2m, 2k, r).
#[no_mangle]
pub extern "C" fn necksum_table_diff_grid(
    r: usize,
    m_max: usize,
    out: *mut *mut NecksumTable,
) -> NecksumStatus {
    guard(out, || Ok(boxed(NecksumTable(table_diff_grid(r, m_max).map_err(lib_err)?))))
}

/// Rows n = 1..=n_max of summed differences for r = 0..=n.
#[no_mangle]
pub extern "C" fn necksum_table_diff_sum(n_max: usize, out: *mut *mut NecksumTable) -> NecksumStatus {
    guard(out, || Ok(boxed(NecksumTable(table_diff_sum(n_max).map_err(lib_err)?))))
}

/// # Safety
/// `table` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn necksum_table_rows(table: *const NecksumTable) -> usize {
    table.as_ref().map_or(0, |t| t.0.rows.len())
}

/// Length of row `row` (0-based), or 0 when out of range.
///
/// # Safety
/// `table` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn necksum_table_row_len(table: *const NecksumTable, row: usize) -> usize {
    table.as_ref().and_then(|t| t.0.rows.get(row)).map_or(0, |r| r.values.len())
}

/// Entry at (row, column), both 0-based, as a 64-bit integer.
///
/// # Safety
/// `table` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn necksum_table_get(
    table: *const NecksumTable,
    row: usize,
    column: usize,
    out: *mut i64,
) -> NecksumStatus {
    guard(out, || {
        let t = table.as_ref().ok_or((NecksumStatus::NullPointer, "table handle is null".into()))?;
        let v =
            t.0.rows
                .get(row)
                .and_then(|r| r.values.get(column))
                .ok_or((NecksumStatus::OutOfRange, format!("no entry at ({row}, {column})")))?;
        i64::try_from(v).map_err(|_| (NecksumStatus::Overflow, format!("{v} does not fit in 64 bits")))
    })
}

/// CSV rendering, identical to the command-line output.
///
/// # Safety
/// `table` must be a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn necksum_table_to_csv(
    table: *const NecksumTable,
    out: *mut *mut c_char,
) -> NecksumStatus {
    guard(out, || {
        let t = table.as_ref().ok_or((NecksumStatus::NullPointer, "table handle is null".into()))?;
        Ok(c_string(t.0.to_csv()))
    })
}

/// # Safety
/// `table` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn necksum_table_free(table: *mut NecksumTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}
