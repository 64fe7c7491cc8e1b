//! Tropical semifield arithmetic and Y-seed mutation.
//!
//! The tropical semifield on integer r-vectors has entrywise minimum as
//! addition and entrywise sum as multiplication. Splitting an element into
//! its positive and negative parts, x = [x]+ - [x]-, with [x]+ . [x]- = 0
//! entrywise, is what every mutation rule below is written in terms of.
//!
//! A Y-seed is a skew-symmetric integer matrix together with one tropical
//! vector per matrix row. Mutating the seed at index k flips the k-th vector
//! and corrects the others through the matrix entries b_{ki}; the matrix
//! itself mutates by the usual skew-symmetric rule. Both operations are
//! involutions at a fixed index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{apply_index_substitution, index_exchange_objects, IndexVector};
use crate::quiver::quiver_b_matrix_d1;
use crate::tilting::ClusterTilting;

/// Element of the tropical semifield on integer r-vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalVector(pub Vec<i64>);

impl TropicalVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn check_len(a: &TropicalVector, b: &TropicalVector) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Validation(format!(
            "tropical vectors of different lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// Entrywise minimum.
pub fn trop_add(a: &TropicalVector, b: &TropicalVector) -> Result<TropicalVector> {
    check_len(a, b)?;
    Ok(TropicalVector(
        a.0.iter().zip(&b.0).map(|(&x, &y)| x.min(y)).collect(),
    ))
}

/// Entrywise integer sum.
pub fn trop_mul(a: &TropicalVector, b: &TropicalVector) -> Result<TropicalVector> {
    check_len(a, b)?;
    Ok(TropicalVector(
        a.0.iter().zip(&b.0).map(|(&x, &y)| x + y).collect(),
    ))
}

/// Scalar positive part, max(x, 0).
pub fn pos(x: i64) -> i64 {
    x.max(0)
}

/// Scalar negative part, max(-x, 0); x = pos(x) - neg(x).
pub fn neg(x: i64) -> i64 {
    (-x).max(0)
}

/// Entrywise positive part.
pub fn pos_part(x: &TropicalVector) -> TropicalVector {
    TropicalVector(x.0.iter().map(|&e| pos(e)).collect())
}

/// Entrywise negative part.
pub fn neg_part(x: &TropicalVector) -> TropicalVector {
    TropicalVector(x.0.iter().map(|&e| neg(e)).collect())
}

/// Skew-symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMatrix {
    rows: Vec<Vec<i64>>,
}

impl SkewMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if rows[i][j] != -rows[j][i] {
                    return Err(Error::Validation(format!(
                        "matrix is not skew-symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(SkewMatrix { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Loads the file format {"n": .., "rows": [[..], ..]}.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: MatrixFileRaw = serde_json::from_str(s)
            .map_err(|e| Error::Validation(format!("bad matrix file: {e}")))?;
        if raw.rows.len() != raw.n {
            return Err(Error::Validation(format!(
                "matrix file declares n={} but has {} rows",
                raw.n,
                raw.rows.len()
            )));
        }
        SkewMatrix::new(raw.rows)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&MatrixFileRaw {
            n: self.n(),
            rows: self.rows.clone(),
        })
        .expect("plain data serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixFileRaw {
    n: usize,
    rows: Vec<Vec<i64>>,
}

/// Skew-symmetric matrix with one tropical coefficient vector per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YSeed {
    pub matrix: SkewMatrix,
    pub coeffs: Vec<TropicalVector>,
}

impl YSeed {
    pub fn new(matrix: SkewMatrix, coeffs: Vec<TropicalVector>) -> Result<Self> {
        if coeffs.len() != matrix.n() {
            return Err(Error::Validation(format!(
                "{} coefficient vectors for a {}x{} matrix",
                coeffs.len(),
                matrix.n(),
                matrix.n()
            )));
        }
        if let Some(first) = coeffs.first() {
            for c in &coeffs[1..] {
                check_len(first, c)?;
            }
        }
        Ok(YSeed { matrix, coeffs })
    }
}

/// b'_{ij} = -b_{ij} when i = k or j = k, else
/// b_{ij} + pos(b_{ik}) pos(b_{kj}) - neg(b_{ik}) neg(b_{kj}).
pub fn mutate_matrix(b: &SkewMatrix, k: usize) -> Result<SkewMatrix> {
    let n = b.n();
    if k >= n {
        return Err(Error::Validation(format!(
            "mutation index {k} out of range for a {n}x{n} matrix"
        )));
    }
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[i][j] = if i == k || j == k {
                -b.get(i, j)
            } else {
                b.get(i, j) + pos(b.get(i, k)) * pos(b.get(k, j))
                    - neg(b.get(i, k)) * neg(b.get(k, j))
            };
        }
    }
    SkewMatrix::new(rows).map_err(|_| {
        Error::Invariant("matrix mutation destroyed skew-symmetry".into())
    })
}

/// v'_k = -v_k; for i != k, v'_i = v_i + pos(b_{ki}) [v_k]+ - neg(b_{ki}) [v_k]-,
/// with scalar-by-vector products taken entrywise.
pub fn mutate_y_tropical(
    b: &SkewMatrix,
    v: &[TropicalVector],
    k: usize,
) -> Result<Vec<TropicalVector>> {
    let n = b.n();
    if k >= n {
        return Err(Error::Validation(format!(
            "mutation index {k} out of range for a {n}x{n} matrix"
        )));
    }
    if v.len() != n {
        return Err(Error::Validation(format!(
            "{} coefficient vectors for a {n}x{n} matrix",
            v.len()
        )));
    }
    if let Some(first) = v.first() {
        for c in v {
            check_len(first, c)?;
        }
    }
    let vk_pos = pos_part(&v[k]);
    let vk_neg = neg_part(&v[k]);
    let mut out = Vec::with_capacity(n);
    for (i, vi) in v.iter().enumerate() {
        if i == k {
            out.push(TropicalVector(vi.0.iter().map(|&e| -e).collect()));
        } else {
            let bp = pos(b.get(k, i));
            let bn = neg(b.get(k, i));
            out.push(TropicalVector(
                vi.0.iter()
                    .zip(vk_pos.0.iter().zip(&vk_neg.0))
                    .map(|(&e, (&plus, &minus))| e + bp * plus - bn * minus)
                    .collect(),
            ));
        }
    }
    Ok(out)
}

/// Whole-seed mutation: coefficients first (through the old matrix), then
/// the matrix.
pub fn mutate_y_seed(seed: &YSeed, k: usize) -> Result<YSeed> {
    let coeffs = mutate_y_tropical(&seed.matrix, &seed.coeffs, k)?;
    let matrix = mutate_matrix(&seed.matrix, k)?;
    Ok(YSeed { matrix, coeffs })
}

#[derive(Debug, Clone)]
pub struct BridgeFailure {
    pub pos: usize,
    pub detail: String,
}

/// Outcome of checking, slot by slot, that index substitution at d = 1 is
/// the tropical Y-mutation of the quiver matrix.
#[derive(Debug, Clone)]
pub struct BridgeReport {
    pub passed: bool,
    pub failures: Vec<BridgeFailure>,
}

/// At d = 1 the exchange vectors of every slot must read off the quiver
/// matrix row, sigma_estar[j] = -[b_{pos,j}]+ and estar[j] = [b_{pos,j}]-
/// off the diagonal, and sign-driven substitution must agree with tropical
/// Y-mutation on scalar coefficient rows. Discrepancies are collected, not
/// raised.
pub fn d1_bridge_check(t: &ClusterTilting) -> Result<BridgeReport> {
    let p = t.params();
    if p.d() != 1 {
        return Err(Error::UnsupportedDimension(format!(
            "the quiver bridge is a d = 1 statement, got d = {}",
            p.d()
        )));
    }
    let b = quiver_b_matrix_d1(t)?;
    let slots = t.summands().len();
    let mut failures = Vec::new();
    for at in 0..slots {
        let ex = index_exchange_objects(t, at)?;
        for j in (0..slots).filter(|&j| j != at) {
            let want_sigma = -pos(b.get(at, j));
            let want_estar = neg(b.get(at, j));
            if ex.sigma_estar[j] != want_sigma || ex.estar[j] != want_estar {
                failures.push(BridgeFailure {
                    pos: at,
                    detail: format!(
                        "slot {j}: exchange vectors ({}, {}) disagree with matrix entry {}, expected ({want_sigma}, {want_estar})",
                        ex.sigma_estar[j], ex.estar[j], b.get(at, j)
                    ),
                });
            }
        }
        let mut probes: Vec<Vec<i64>> = Vec::new();
        for k in 0..slots {
            let mut e = vec![0i64; slots];
            e[k] = 1;
            probes.push(e.clone());
            e[k] = -1;
            probes.push(e);
        }
        probes.push(vec![1; slots]);
        probes.push(
            (0..slots)
                .map(|i| if i % 2 == 0 { 2 } else { -3 })
                .collect(),
        );
        for probe in probes {
            let v = IndexVector::new(t.clone(), probe.clone())?;
            let substituted = apply_index_substitution(&v, at)?;
            let rows: Vec<TropicalVector> =
                probe.iter().map(|&c| TropicalVector(vec![c])).collect();
            let mutated = mutate_y_tropical(&b, &rows, at)?;
            let flat: Vec<i64> = mutated.iter().map(|r| r.0[0]).collect();
            if substituted.coeffs() != &flat[..] {
                failures.push(BridgeFailure {
                    pos: at,
                    detail: format!(
                        "row {probe:?}: substitution gives {:?}, tropical mutation gives {flat:?}",
                        substituted.coeffs()
                    ),
                });
            }
        }
    }
    Ok(BridgeReport {
        passed: failures.is_empty(),
        failures,
    })
}
