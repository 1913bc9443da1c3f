//! C ABI over the `swag` engines.
//!
//! A `SwagHandle` owns one window over one monoid. Every call returns a
//! [`SwagStatus`]; results come back through out-pointers. Values cross the
//! boundary as `double` and are lifted the same way `swagbench` lifts its
//! samples: rounded for `sum` and `maxcount`, strictly positive for
//! `geomean`, hashed by bit pattern for `bloom`.
//!
//! Handles are not thread-safe; use one per thread or lock externally.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use swag::harness::BenchMonoid;
use swag::monoids::{Bloom, GeoMean, MaxCount, Sum};
use swag::{Aggregator, CountingMonoid, Daba, DabaLite, Monoid, Recalc, TwoStacks, TwoStacksLite};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwagStatus {
    Ok = 0,
    NullPointer = 1,
    UnknownAlgo = 2,
    UnknownMonoid = 3,
    EmptyWindow = 4,
    /// The value is outside the monoid's input domain.
    Domain = 5,
    /// The operation does not apply to this handle's monoid.
    Unsupported = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwagAlgo {
    TwoStacks = 0,
    TwoStacksLite = 1,
    Daba = 2,
    DabaLite = 3,
    Recalc = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwagMonoid {
    Sum = 0,
    GeoMean = 1,
    MaxCount = 2,
    Bloom = 3,
}

impl SwagStatus {
    fn from_raw(raw: u32) -> Option<Self> {
        Some(match raw {
            0 => Self::Ok,
            1 => Self::NullPointer,
            2 => Self::UnknownAlgo,
            3 => Self::UnknownMonoid,
            4 => Self::EmptyWindow,
            5 => Self::Domain,
            6 => Self::Unsupported,
            7 => Self::Panic,
            _ => return None,
        })
    }
}

impl SwagAlgo {
    fn from_raw(raw: u32) -> Option<Self> {
        Some(match raw {
            0 => Self::TwoStacks,
            1 => Self::TwoStacksLite,
            2 => Self::Daba,
            3 => Self::DabaLite,
            4 => Self::Recalc,
            _ => return None,
        })
    }
}

impl SwagMonoid {
    fn from_raw(raw: u32) -> Option<Self> {
        Some(match raw {
            0 => Self::Sum,
            1 => Self::GeoMean,
            2 => Self::MaxCount,
            3 => Self::Bloom,
            _ => return None,
        })
    }
}

/// Monoid-specific views of an aggregate as C scalars.
trait Scalar: BenchMonoid {
    fn scalar(&self, agg: &Self::Agg) -> f64;

    fn max_count(&self, _agg: &Self::Agg) -> Option<(i64, u64)> {
        None
    }

    fn might_contain(&self, _agg: &Self::Agg, _x: f64) -> Option<bool> {
        None
    }
}

impl Scalar for Sum {
    fn scalar(&self, agg: &i64) -> f64 {
        self.lower(agg) as f64
    }
}

impl Scalar for GeoMean {
    fn scalar(&self, agg: &Self::Agg) -> f64 {
        self.lower(agg)
    }
}

impl Scalar for MaxCount<i64> {
    fn scalar(&self, agg: &Self::Agg) -> f64 {
        self.lower(agg) as f64
    }

    fn max_count(&self, agg: &Self::Agg) -> Option<(i64, u64)> {
        use swag::monoids::Extended;
        Some(match agg.max {
            Extended::NegInf => (i64::MIN, 0),
            Extended::Val(v) => (v, agg.count),
        })
    }
}

impl Scalar for Bloom {
    fn scalar(&self, agg: &Self::Agg) -> f64 {
        agg.popcount() as f64
    }

    fn might_contain(&self, agg: &Self::Agg, x: f64) -> Option<bool> {
        Some(agg.might_contain(x.to_bits()))
    }
}

trait Window {
    fn insert(&mut self, x: f64) -> Result<(), SwagStatus>;
    fn evict(&mut self) -> Result<(), SwagStatus>;
    fn query(&self) -> f64;
    fn max_count(&self) -> Option<(i64, u64)>;
    fn might_contain(&self, x: f64) -> Option<bool>;
    fn len(&self) -> usize;
    fn combines(&self) -> u64;
    fn aggregate_slots(&self) -> usize;
}

struct Engine<E>(E);

impl<E, M> Window for Engine<E>
where
    E: Aggregator<Monoid = CountingMonoid<M>>,
    M: Scalar,
{
    fn insert(&mut self, x: f64) -> Result<(), SwagStatus> {
        let v = self
            .0
            .monoid()
            .inner()
            .lift_sample(x)
            .ok_or(SwagStatus::Domain)?;
        self.0.insert(v);
        Ok(())
    }

    fn evict(&mut self) -> Result<(), SwagStatus> {
        self.0.evict().map_err(|_| SwagStatus::EmptyWindow)
    }

    fn query(&self) -> f64 {
        self.0.monoid().inner().scalar(&self.0.query())
    }

    fn max_count(&self) -> Option<(i64, u64)> {
        self.0.monoid().inner().max_count(&self.0.query())
    }

    fn might_contain(&self, x: f64) -> Option<bool> {
        self.0.monoid().inner().might_contain(&self.0.query(), x)
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn combines(&self) -> u64 {
        self.0.monoid().calls()
    }

    fn aggregate_slots(&self) -> usize {
        self.0.aggregate_slots()
    }
}

/// Opaque window handle.
pub struct SwagHandle {
    inner: Box<dyn Window>,
}

fn build<M: Scalar + 'static>(algo: SwagAlgo, m: M) -> Box<dyn Window> {
    let m = CountingMonoid::new(m);
    match algo {
        SwagAlgo::TwoStacks => Box::new(Engine(TwoStacks::new(m))),
        SwagAlgo::TwoStacksLite => Box::new(Engine(TwoStacksLite::new(m))),
        SwagAlgo::Daba => Box::new(Engine(Daba::new(m))),
        SwagAlgo::DabaLite => Box::new(Engine(DabaLite::new(m))),
        SwagAlgo::Recalc => Box::new(Engine(Recalc::new(m))),
    }
}

fn guard(f: impl FnOnce() -> Result<(), SwagStatus>) -> SwagStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SwagStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => SwagStatus::Panic,
    }
}

/// # Safety
/// `handle` is null or a live pointer from [`swag_new`].
unsafe fn handle_ref<'a>(handle: *const SwagHandle) -> Result<&'a SwagHandle, SwagStatus> {
    handle.as_ref().ok_or(SwagStatus::NullPointer)
}

/// # Safety
/// `handle` is null or a live pointer from [`swag_new`], not aliased.
unsafe fn handle_mut<'a>(handle: *mut SwagHandle) -> Result<&'a mut SwagHandle, SwagStatus> {
    handle.as_mut().ok_or(SwagStatus::NullPointer)
}

/// # Safety
/// `out` is null or valid for a write of `T`.
unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), SwagStatus> {
    if out.is_null() {
        return Err(SwagStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

/// Creates an empty window. `algo` and `monoid` take `SwagAlgo` and
/// `SwagMonoid` values. On success `*out` owns a handle to release with
/// [`swag_free`]; on failure it is set to NULL.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn swag_new(algo: u32, monoid: u32, out: *mut *mut SwagHandle) -> SwagStatus {
    guard(|| {
        if out.is_null() {
            return Err(SwagStatus::NullPointer);
        }
        out.write(ptr::null_mut());
        let algo = SwagAlgo::from_raw(algo).ok_or(SwagStatus::UnknownAlgo)?;
        let monoid = SwagMonoid::from_raw(monoid).ok_or(SwagStatus::UnknownMonoid)?;
        let inner = match monoid {
            SwagMonoid::Sum => build(algo, Sum),
            SwagMonoid::GeoMean => build(algo, GeoMean),
            SwagMonoid::MaxCount => build(algo, MaxCount::<i64>::new()),
            SwagMonoid::Bloom => build(algo, Bloom::default()),
        };
        out.write(Box::into_raw(Box::new(SwagHandle { inner })));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `handle` is NULL or came from [`swag_new`] and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn swag_free(handle: *mut SwagHandle) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Appends `value` as the youngest element.
///
/// # Safety
/// `handle` is NULL or a live handle not used concurrently.
#[no_mangle]
pub unsafe extern "C" fn swag_insert(handle: *mut SwagHandle, value: f64) -> SwagStatus {
    guard(|| handle_mut(handle)?.inner.insert(value))
}

/// Removes the oldest element.
///
/// # Safety
/// As for [`swag_insert`].
#[no_mangle]
pub unsafe extern "C" fn swag_evict(handle: *mut SwagHandle) -> SwagStatus {
    guard(|| handle_mut(handle)?.inner.evict())
}

/// Writes the window's aggregate: the sum, the geometric mean (1 when
/// empty), the number of occurrences of the maximum, or the filter's set-bit
/// count.
///
/// # Safety
/// `handle` is NULL or a live handle; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn swag_query(handle: *const SwagHandle, out: *mut f64) -> SwagStatus {
    guard(|| {
        let v = handle_ref(handle)?.inner.query();
        write_out(out, v)
    })
}

/// Maximum and its multiplicity, for `SWAG_MONOID_MAX_COUNT` handles. An
/// empty window reports `INT64_MIN` and 0.
///
/// # Safety
/// `handle` is NULL or a live handle; `max` and `count` are valid for one
/// write each.
#[no_mangle]
pub unsafe extern "C" fn swag_query_max_count(
    handle: *const SwagHandle,
    max: *mut i64,
    count: *mut u64,
) -> SwagStatus {
    guard(|| {
        let (m, c) = handle_ref(handle)?
            .inner
            .max_count()
            .ok_or(SwagStatus::Unsupported)?;
        if max.is_null() || count.is_null() {
            return Err(SwagStatus::NullPointer);
        }
        max.write(m);
        count.write(c);
        Ok(())
    })
}

/// Membership test against the window's filter, for `SWAG_MONOID_BLOOM`
/// handles. False positives are possible, false negatives are not.
///
/// # Safety
/// `handle` is NULL or a live handle; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn swag_might_contain(
    handle: *const SwagHandle,
    value: f64,
    out: *mut bool,
) -> SwagStatus {
    guard(|| {
        let hit = handle_ref(handle)?
            .inner
            .might_contain(value)
            .ok_or(SwagStatus::Unsupported)?;
        write_out(out, hit)
    })
}

/// # Safety
/// `handle` is NULL or a live handle; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn swag_len(handle: *const SwagHandle, out: *mut usize) -> SwagStatus {
    guard(|| {
        let n = handle_ref(handle)?.inner.len();
        write_out(out, n)
    })
}

/// Total monoid combines performed by this handle so far.
///
/// # Safety
/// `handle` is NULL or a live handle; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn swag_combine_count(
    handle: *const SwagHandle,
    out: *mut u64,
) -> SwagStatus {
    guard(|| {
        let n = handle_ref(handle)?.inner.combines();
        write_out(out, n)
    })
}

/// Partial aggregates currently stored, side slots included.
///
/// # Safety
/// `handle` is NULL or a live handle; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn swag_aggregate_slots(
    handle: *const SwagHandle,
    out: *mut usize,
) -> SwagStatus {
    guard(|| {
        let n = handle_ref(handle)?.inner.aggregate_slots();
        write_out(out, n)
    })
}

/// Static, NUL-terminated description of a `SwagStatus` value.
#[no_mangle]
pub extern "C" fn swag_status_message(status: u32) -> *const c_char {
    let msg: &'static [u8] = match SwagStatus::from_raw(status) {
        None => b"unknown status\0",
        Some(SwagStatus::Ok) => b"ok\0",
        Some(SwagStatus::NullPointer) => b"null pointer argument\0",
        Some(SwagStatus::UnknownAlgo) => b"unknown algorithm\0",
        Some(SwagStatus::UnknownMonoid) => b"unknown monoid\0",
        Some(SwagStatus::EmptyWindow) => b"window is empty\0",
        Some(SwagStatus::Domain) => b"value outside the monoid's input domain\0",
        Some(SwagStatus::Unsupported) => b"operation not supported by this monoid\0",
        Some(SwagStatus::Panic) => b"internal error\0",
    };
    msg.as_ptr().cast()
}
