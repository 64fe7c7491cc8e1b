//! Model parameters.
//!
//! A model is fixed by two positive integers `d` and `n`. Everything else is
//! derived: objects are labeled by (d+1)-subsets of the cyclic vertex set
//! {0, ..., m-1} with m = n + 2d + 1, subject to the non-adjacency rule in
//! [`crate::tuple`]. The vertex parameters are canonical, v_i = i; only their
//! cyclic order ever matters.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelParams {
    d: u32,
    n: u32,
}

impl ModelParams {
    pub fn new(d: u32, n: u32) -> Result<Self> {
        if d < 1 || n < 1 {
            return Err(Error::Validation(format!(
                "parameters must satisfy d >= 1 and n >= 1, got d={d}, n={n}"
            )));
        }
        Ok(ModelParams { d, n })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Cyclic modulus m = n + 2d + 1; vertices are exactly {0, ..., m-1}.
    pub fn m(&self) -> u32 {
        self.n + 2 * self.d + 1
    }

    /// Number of entries in an index tuple, d + 1.
    pub fn tuple_len(&self) -> usize {
        self.d as usize + 1
    }

    /// Whether d is odd. Index transport and shear vectors exist only here.
    pub fn d_is_odd(&self) -> bool {
        self.d % 2 == 1
    }

    /// Common size N(d, n) = C(n+d-1, d) of every maximal non-intertwining
    /// collection.
    pub fn tilting_size(&self) -> usize {
        num_integer::binomial((self.n + self.d - 1) as u64, self.d as u64) as usize
    }

    /// Closed form for the number of admissible tuples:
    /// m/(m-d-1) * C(m-d-1, d+1), the count of (d+1)-subsets of a cyclic
    /// m-vertex set with no two chosen vertices adjacent.
    pub fn object_count(&self) -> u64 {
        let m = self.m() as u128;
        let k = self.d as u128 + 1;
        let b = num_integer::binomial(m - k, k);
        debug_assert_eq!(b * m % (m - k), 0);
        (b * m / (m - k)) as u64
    }
}
