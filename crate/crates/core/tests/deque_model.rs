use std::collections::VecDeque;

use proptest::prelude::*;
use swag::{ChunkedDeque, DequeError};

#[derive(Debug, Clone)]
enum Op {
    Push(u32),
    PopFront,
    PopBack,
    /// Walk a cursor from the front by this many steps, then read and write.
    Probe(usize),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        4 => any::<u32>().prop_map(Op::Push),
        2 => Just(Op::PopFront),
        1 => Just(Op::PopBack),
        1 => (0usize..64).prop_map(Op::Probe),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn behaves_like_vecdeque(cap in 1usize..9, ops in prop::collection::vec(op(), 0..2000)) {
        let mut d = ChunkedDeque::with_chunk_capacity(cap);
        let mut model = VecDeque::new();
        for op in ops {
            match op {
                Op::Push(x) => {
                    d.push_back(x);
                    model.push_back(x);
                }
                Op::PopFront => prop_assert_eq!(d.pop_front().ok(), model.pop_front()),
                Op::PopBack => prop_assert_eq!(d.pop_back().ok(), model.pop_back()),
                Op::Probe(k) => {
                    let mut c = d.begin();
                    for _ in 0..k.min(model.len()) {
                        c = d.next(c);
                    }
                    let i = k.min(model.len());
                    if i < model.len() {
                        prop_assert_eq!(d.get(&c), &model[i]);
                        d.set(&c, model[i] ^ 1);
                        model[i] ^= 1;
                    } else {
                        prop_assert!(c == d.end());
                        prop_assert!(d.try_get(&c).is_err());
                    }
                }
            }
            prop_assert_eq!(d.len(), model.len());
            prop_assert_eq!(d.front(), model.front());
            prop_assert_eq!(d.back(), model.back());
        }
        prop_assert!(d.iter().eq(model.iter()));
    }

    #[test]
    fn backward_walk_visits_everything(cap in 1usize..9, n in 0usize..300, skip in 0usize..300) {
        let mut d = ChunkedDeque::with_chunk_capacity(cap);
        d.extend(0..n);
        for _ in 0..skip.min(n) {
            d.pop_front().unwrap();
        }
        let mut seen = Vec::new();
        let mut c = d.end();
        while c != d.begin() {
            c = d.prev(c);
            seen.push(*d.get(&c));
        }
        seen.reverse();
        prop_assert_eq!(seen, (skip.min(n)..n).collect::<Vec<_>>());
    }
}

#[test]
fn hundred_thousand_ops_against_model() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut d = ChunkedDeque::with_chunk_capacity(16);
    let mut model = VecDeque::new();
    for i in 0..100_000u64 {
        match rng.gen_range(0..10) {
            0..=4 => {
                d.push_back(i);
                model.push_back(i);
            }
            5..=7 => assert_eq!(d.pop_front().ok(), model.pop_front()),
            _ => assert_eq!(d.pop_back().ok(), model.pop_back()),
        }
        assert_eq!(d.len(), model.len());
    }
    assert!(d.iter().eq(model.iter()));
}

#[test]
fn cursors_survive_pushes_and_unrelated_pops() {
    let mut d = ChunkedDeque::with_chunk_capacity(4);
    d.extend(0..10);
    let mut c = d.begin();
    for _ in 0..6 {
        c = d.next(c);
    }
    for i in 10..100 {
        d.push_back(i);
    }
    for _ in 0..5 {
        d.pop_front().unwrap();
    }
    assert_eq!(d.get(&c), &6);
    for _ in 0..93 {
        d.pop_back().unwrap();
    }
    assert_eq!(d.get(&c), &6);
    assert_eq!(d.pop_back(), Ok(6));
    assert!(matches!(d.try_get(&c), Err(DequeError::OutOfRange { .. })));
    d.push_back(60);
    assert_eq!(d.get(&c), &60);
    d.pop_front().unwrap();
    d.pop_front().unwrap();
    assert!(matches!(d.try_get(&c), Err(DequeError::OutOfRange { .. })));
}
