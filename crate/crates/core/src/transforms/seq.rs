use crate::group::GraphParams;
use crate::numerics::{AlgebraicValue, Scalar};

/// A finitely supported radial function `x ↦ f(|x|)`, stored as `f(0..=N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialSeq<S> {
    params: GraphParams,
    values: Vec<S>,
}

/// A finitely supported even function on `Z`, stored as `g(0..=M)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenSeq<S> {
    params: GraphParams,
    values: Vec<S>,
}

macro_rules! seq_common {
    ($ty:ident) => {
        impl<S: Scalar> $ty<S> {
            pub fn new(params: GraphParams, values: Vec<S>) -> Self {
                $ty { params, values }
            }

            pub fn from_fn(params: GraphParams, len: usize, f: impl FnMut(usize) -> S) -> Self {
                $ty {
                    params,
                    values: (0..len).map(f).collect(),
                }
            }

            /// `δ` at index 0 (the point mass at `o`, or at `0 ∈ Z`).
            pub fn delta_at(params: GraphParams, index: usize) -> Self {
                let q = params.q();
                Self::from_fn(params, index + 1, |i| {
                    if i == index {
                        S::one(q)
                    } else {
                        S::zero(q)
                    }
                })
            }

            pub fn params(&self) -> &GraphParams {
                &self.params
            }

            pub fn q(&self) -> u64 {
                self.params.q()
            }

            pub fn values(&self) -> &[S] {
                &self.values
            }

            pub fn into_values(self) -> Vec<S> {
                self.values
            }

            /// Number of stored values.
            pub fn len(&self) -> usize {
                self.values.len()
            }

            pub fn is_empty(&self) -> bool {
                self.values.is_empty()
            }

            /// Index of the last nonzero value; `None` for the zero function.
            pub fn support_radius(&self) -> Option<usize> {
                self.values.iter().rposition(|v| !v.is_zero())
            }

            /// Drops trailing zeros.
            pub fn trimmed(&self) -> Self {
                let end = self.support_radius().map_or(0, |n| n + 1);
                $ty {
                    params: self.params,
                    values: self.values[..end].to_vec(),
                }
            }

            /// Pads with zeros or truncates to exactly `len` values.
            pub fn resized(&self, len: usize) -> Self {
                let mut values = self.values.clone();
                values.resize(len, S::zero(self.q()));
                $ty {
                    params: self.params,
                    values,
                }
            }

            pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> $ty<T> {
                $ty {
                    params: self.params,
                    values: self.values.iter().map(f).collect(),
                }
            }

            /// Equality up to trailing zeros.
            pub fn same_function(&self, other: &Self) -> bool {
                self.trimmed().values == other.trimmed().values
            }
        }

        impl $ty<AlgebraicValue> {
            pub fn to_f64(&self) -> $ty<f64> {
                self.map(|v| v.to_f64())
            }
        }
    };
}

seq_common!(RadialSeq);
seq_common!(EvenSeq);

impl<S: Scalar> RadialSeq<S> {
    /// `f(n)`, zero beyond the stored range.
    pub fn at(&self, n: usize) -> S {
        self.values
            .get(n)
            .cloned()
            .unwrap_or_else(|| S::zero(self.q()))
    }
}

impl<S: Scalar> EvenSeq<S> {
    /// `g(h) = g(|h|)`, zero beyond the stored range.
    pub fn at(&self, h: i64) -> S {
        self.values
            .get(h.unsigned_abs() as usize)
            .cloned()
            .unwrap_or_else(|| S::zero(self.q()))
    }
}
