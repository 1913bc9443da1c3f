use std::ffi::CStr;
use std::ptr;

use swag_ffi::*;

fn open(algo: SwagAlgo, monoid: SwagMonoid) -> *mut SwagHandle {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { swag_new(algo as u32, monoid as u32, &mut h) },
        SwagStatus::Ok
    );
    assert!(!h.is_null());
    h
}

fn query(h: *const SwagHandle) -> f64 {
    let mut out = f64::NAN;
    assert_eq!(unsafe { swag_query(h, &mut out) }, SwagStatus::Ok);
    out
}

const ALGOS: [SwagAlgo; 5] = [
    SwagAlgo::TwoStacks,
    SwagAlgo::TwoStacksLite,
    SwagAlgo::Daba,
    SwagAlgo::DabaLite,
    SwagAlgo::Recalc,
];

#[test]
fn sliding_sum_on_every_algo() {
    for algo in ALGOS {
        let h = open(algo, SwagMonoid::Sum);
        let mut expect = std::collections::VecDeque::new();
        for i in 0..1000i64 {
            unsafe {
                assert_eq!(swag_insert(h, i as f64), SwagStatus::Ok);
            }
            expect.push_back(i);
            if expect.len() > 37 {
                unsafe {
                    assert_eq!(swag_evict(h), SwagStatus::Ok);
                }
                expect.pop_front();
            }
            assert_eq!(
                query(h),
                expect.iter().sum::<i64>() as f64,
                "{algo:?} step {i}"
            );
        }
        let mut len = 0;
        unsafe {
            assert_eq!(swag_len(h, &mut len), SwagStatus::Ok);
            swag_free(h);
        }
        assert_eq!(len, 37);
    }
}

#[test]
fn maxcount_worked_example() {
    let h = open(SwagAlgo::DabaLite, SwagMonoid::MaxCount);
    let (mut max, mut count) = (0i64, 0u64);
    unsafe {
        assert_eq!(
            swag_query_max_count(h, &mut max, &mut count),
            SwagStatus::Ok
        );
        assert_eq!((max, count), (i64::MIN, 0));
        for x in [4.0, 5.0, 3.0, 4.0, 0.0, 4.0, 4.0] {
            swag_insert(h, x);
        }
        swag_query_max_count(h, &mut max, &mut count);
        assert_eq!((max, count), (5, 1));
        swag_evict(h);
        swag_evict(h);
        swag_query_max_count(h, &mut max, &mut count);
        assert_eq!((max, count), (4, 3));
        assert_eq!(query(h), 3.0);
        swag_insert(h, 6.0);
        swag_query_max_count(h, &mut max, &mut count);
        assert_eq!((max, count), (6, 1));
        swag_free(h);
    }
}

#[test]
fn geomean_and_domain_errors() {
    let h = open(SwagAlgo::Daba, SwagMonoid::GeoMean);
    assert_eq!(query(h), 1.0);
    unsafe {
        swag_insert(h, 2.0);
        swag_insert(h, 8.0);
        assert!((query(h) - 4.0).abs() < 1e-12);
        assert_eq!(swag_insert(h, 0.0), SwagStatus::Domain);
        assert_eq!(swag_insert(h, f64::NAN), SwagStatus::Domain);
        let mut len = 0;
        swag_len(h, &mut len);
        assert_eq!(len, 2);
        swag_free(h);
    }
}

#[test]
fn bloom_membership() {
    let h = open(SwagAlgo::TwoStacksLite, SwagMonoid::Bloom);
    let mut hit = false;
    unsafe {
        swag_insert(h, 1.5);
        swag_insert(h, 2.5);
        assert_eq!(swag_might_contain(h, 1.5, &mut hit), SwagStatus::Ok);
        assert!(hit);
        swag_evict(h);
        swag_evict(h);
        swag_might_contain(h, 1.5, &mut hit);
        assert!(!hit);
        assert_eq!(query(h), 0.0);
        swag_free(h);
    }
}

#[test]
fn status_codes() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(swag_new(99, 0, &mut h), SwagStatus::UnknownAlgo);
        assert!(h.is_null());
        assert_eq!(swag_new(0, 99, &mut h), SwagStatus::UnknownMonoid);
        assert_eq!(swag_new(0, 0, ptr::null_mut()), SwagStatus::NullPointer);
        assert_eq!(swag_insert(ptr::null_mut(), 1.0), SwagStatus::NullPointer);
        assert_eq!(
            swag_query(ptr::null(), ptr::null_mut()),
            SwagStatus::NullPointer
        );
        swag_free(ptr::null_mut());
    }
    let h = open(SwagAlgo::Daba, SwagMonoid::Sum);
    let (mut max, mut count, mut hit) = (0, 0, false);
    unsafe {
        assert_eq!(swag_evict(h), SwagStatus::EmptyWindow);
        assert_eq!(swag_query(h, ptr::null_mut()), SwagStatus::NullPointer);
        assert_eq!(
            swag_query_max_count(h, &mut max, &mut count),
            SwagStatus::Unsupported
        );
        assert_eq!(
            swag_might_contain(h, 1.0, &mut hit),
            SwagStatus::Unsupported
        );
        swag_free(h);
    }
    for code in 0..8u32 {
        let msg = unsafe { CStr::from_ptr(swag_status_message(code)) };
        assert!(!msg.to_bytes().is_empty());
    }
    let msg = unsafe { CStr::from_ptr(swag_status_message(1234)) };
    assert_eq!(msg.to_str().unwrap(), "unknown status");
}

#[test]
fn combine_count_and_slots() {
    let h = open(SwagAlgo::DabaLite, SwagMonoid::Sum);
    let (mut calls, mut slots) = (0u64, 0usize);
    unsafe {
        for i in 0..64 {
            swag_insert(h, i as f64);
        }
        swag_aggregate_slots(h, &mut slots);
        assert_eq!(slots, 64 + 2);
        swag_combine_count(h, &mut calls);
        swag_free(h);
    }
    // at most three combines per insert
    assert!(calls > 0 && calls <= 3 * 64, "{calls}");
}
