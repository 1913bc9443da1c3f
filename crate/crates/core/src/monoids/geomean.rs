use crate::monoid::Monoid;

/// Geometric mean, kept in log space so that `combine` is a pair of
/// additions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GeoMean;

/// Sum of natural logs and number of contributing items.
///
/// `count == 0` implies `log_sum == 0.0`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GeoMeanAgg {
    pub log_sum: f64,
    pub count: u64,
}

impl Monoid for GeoMean {
    type In = f64;
    type Agg = GeoMeanAgg;
    type Out = f64;

    fn identity(&self) -> GeoMeanAgg {
        GeoMeanAgg::default()
    }

    #[inline]
    fn combine(&self, older: &GeoMeanAgg, newer: &GeoMeanAgg) -> GeoMeanAgg {
        GeoMeanAgg {
            log_sum: older.log_sum + newer.log_sum,
            count: older.count + newer.count,
        }
    }

    /// Inputs must be strictly positive; anything else yields a NaN or
    /// infinite `log_sum`.
    fn lift(&self, input: f64) -> GeoMeanAgg {
        GeoMeanAgg {
            log_sum: input.ln(),
            count: 1,
        }
    }

    /// The empty product: an empty window lowers to 1.
    fn lower(&self, agg: &GeoMeanAgg) -> f64 {
        if agg.count == 0 {
            1.0
        } else {
            (agg.log_sum / agg.count as f64).exp()
        }
    }
}
