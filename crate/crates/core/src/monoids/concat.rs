use crate::monoid::Monoid;

/// String concatenation over single characters. Not commutative, so any
/// aggregator that swaps operands produces a visibly wrong answer.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Concat;

impl Monoid for Concat {
    type In = char;
    type Agg = String;
    type Out = String;

    fn identity(&self) -> String {
        String::new()
    }

    fn combine(&self, older: &String, newer: &String) -> String {
        let mut out = String::with_capacity(older.len() + newer.len());
        out.push_str(older);
        out.push_str(newer);
        out
    }

    fn lift(&self, input: char) -> String {
        input.to_string()
    }

    fn lower(&self, agg: &String) -> String {
        agg.clone()
    }
}
