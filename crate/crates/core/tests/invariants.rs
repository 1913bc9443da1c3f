//! Structural audits after every operation.

mod common;

use common::rng;
use rand::Rng;
use swag::monoids::{Concat, Sum};
use swag::{Aggregator, Daba, DabaLite, Monoid, TwoStacks, TwoStacksLite};

/// Applies one op to all engines and audits each against the window.
struct Harness<M: Monoid> {
    m: M,
    window: Vec<M::Agg>,
    ts: TwoStacks<M>,
    tsl: TwoStacksLite<M>,
    daba: Daba<M>,
    lite: DabaLite<M>,
}

impl<M> Harness<M>
where
    M: Monoid + Clone,
    M::Agg: PartialEq + std::fmt::Debug,
{
    fn new(m: M) -> Self {
        Self {
            window: Vec::new(),
            ts: TwoStacks::new(m.clone()),
            tsl: TwoStacksLite::new(m.clone()),
            daba: Daba::new(m.clone()),
            lite: DabaLite::new(m.clone()),
            m,
        }
    }

    fn insert(&mut self, v: M::Agg) {
        self.ts.insert(v.clone());
        self.tsl.insert(v.clone());
        self.daba.insert(v.clone());
        self.lite.insert(v.clone());
        self.window.push(v);
    }

    fn evict(&mut self) {
        if self.window.is_empty() {
            return;
        }
        self.window.remove(0);
        self.ts.evict().unwrap();
        self.tsl.evict().unwrap();
        self.daba.evict().unwrap();
        self.lite.evict().unwrap();
    }

    fn audit(&self, step: usize) {
        let w = &self.window;
        let m = &self.m;
        self.ts
            .check_invariants(m, w)
            .unwrap_or_else(|e| panic!("two-stacks step {step}: {e}"));
        self.tsl
            .check_invariants(m, w)
            .unwrap_or_else(|e| panic!("two-stacks-lite step {step}: {e}"));
        self.daba
            .check_invariants(m, w)
            .unwrap_or_else(|e| panic!("daba step {step}: {e}"));
        self.lite
            .check_invariants(m, w)
            .unwrap_or_else(|e| panic!("daba-lite step {step}: {e}"));
        let want = m.fold(w);
        for (name, got) in [
            ("two-stacks", self.ts.query()),
            ("two-stacks-lite", self.tsl.query()),
            ("daba", self.daba.query()),
            ("daba-lite", self.lite.query()),
        ] {
            assert_eq!(got, want, "{name} query at step {step}");
        }
    }
}

#[test]
fn random_walks_stay_consistent() {
    let mut r = rng(21);
    let mut h = Harness::new(Concat);
    for step in 0..6000 {
        if r.gen_bool(0.52) && h.window.len() < 64 {
            h.insert(char::from(r.gen_range(b'a'..=b'z')).to_string());
        } else {
            h.evict();
        }
        h.audit(step);
    }
}

#[test]
fn fill_and_drain_up_to_each_power_of_two() {
    for k in 0..=10 {
        let n = 1usize << k;
        let mut h = Harness::new(Sum);
        let mut step = 0;
        for _ in 0..2 {
            for i in 0..n {
                h.insert(i as i64 * 7 - 3);
                if n <= 64 || i % 61 == 0 {
                    h.audit(step);
                }
                step += 1;
            }
            while !h.window.is_empty() {
                h.evict();
                if n <= 64 || h.window.len().is_multiple_of(61) {
                    h.audit(step);
                }
                step += 1;
            }
            h.audit(step);
        }
    }
}

#[test]
fn steady_state_at_2_pow_10() {
    let n = 1 << 10;
    let mut h = Harness::new(Sum);
    for i in 0..n {
        h.insert(i);
    }
    // audits are quadratic in the window; sample them across two full cycles
    for step in 0..2 * n as usize {
        h.evict();
        h.insert(step as i64);
        if step % 97 == 0 || step % 1024 < 2 || step % 1024 > 1021 {
            h.audit(step);
        }
    }
}

#[test]
fn steady_state_every_small_size() {
    for n in 1..=40usize {
        let mut h = Harness::new(Concat);
        for i in 0..n {
            h.insert(((b'a' + (i % 26) as u8) as char).to_string());
            h.audit(i);
        }
        for step in 0..3 * n {
            h.evict();
            h.audit(step);
            h.insert(((b'A' + (step % 26) as u8) as char).to_string());
            h.audit(step);
        }
    }
}

#[test]
fn daba_front_and_back_cover_the_window() {
    let mut d = Daba::new(Sum);
    let mut lite = DabaLite::new(Sum);
    let mut r = rng(3);
    for _ in 0..5000 {
        if r.gen_bool(0.5) {
            d.insert(1);
            lite.insert(1);
        } else {
            let _ = d.evict();
            let _ = lite.evict();
        }
        let [nf, nl, nr, na, nb] = d.sizes();
        assert_eq!(nf + nb, d.len());
        if !d.is_empty() {
            assert_eq!(nl + nr + na + 1, nf - nb);
            assert_eq!(nl, nr);
        }
        let s = d.sizes();
        assert_eq!(s, lite.sizes());
    }
}
