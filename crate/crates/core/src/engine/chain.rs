//! Contextual similarity matrices and their sequential product.

use ndarray::Array2;

use crate::error::{Error, Result};

/// Sense-by-sense matrix between two consecutive ambiguous terms: rows are
/// the senses of the earlier term, columns those of the later one.
#[derive(Debug, Clone, PartialEq)]
pub struct Csm {
    /// Plain similarity, before any weighting.
    pub raw: Array2<f64>,
    /// Weighted and, if enabled, max-normalized values.
    pub values: Array2<f64>,
    /// Factor the weighted matrix was divided by.
    pub scale: Option<f64>,
}

impl Csm {
    /// Weights cell `(i, j)` by `row_weights[i] * col_weights[j]`, then
    /// optionally divides by the largest cell.
    pub fn weighted(raw: Array2<f64>, row_weights: &[f64], col_weights: &[f64], normalize: bool) -> Csm {
        debug_assert_eq!(raw.dim(), (row_weights.len(), col_weights.len()));
        let mut values = raw.clone();
        for ((i, j), v) in values.indexed_iter_mut() {
            *v *= row_weights[i] * col_weights[j];
        }
        let mut scale = None;
        if normalize {
            let max = values.iter().copied().fold(0.0, f64::max);
            if max > 0.0 {
                values.mapv_inplace(|v| v / max);
                scale = Some(max);
            }
        }
        Csm { raw, values, scale }
    }

    pub fn is_raw_zero(&self) -> bool {
        self.raw.iter().all(|&v| v == 0.0)
    }
}

/// The matrices of one sentence together with their cumulative products
/// `P_0 = M_0`, `P_k = P_{k-1} M_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductChain {
    pub csms: Vec<Array2<f64>>,
    pub products: Vec<Array2<f64>>,
}

pub fn scsmm(csms: Vec<Array2<f64>>) -> Result<ProductChain> {
    let mut products: Vec<Array2<f64>> = Vec::with_capacity(csms.len());
    for (k, m) in csms.iter().enumerate() {
        let next = match products.last() {
            None => m.clone(),
            Some(p) => {
                if p.ncols() != m.nrows() {
                    return Err(Error::DimensionMismatch {
                        index: k,
                        left_cols: p.ncols(),
                        right_rows: m.nrows(),
                    });
                }
                p.dot(m)
            }
        };
        products.push(next);
    }
    Ok(ProductChain { csms, products })
}

/// Row-major position of the largest cell; the first one wins ties.
fn argmax2(m: &Array2<f64>) -> Option<((usize, usize), f64)> {
    let mut best: Option<((usize, usize), f64)> = None;
    for (idx, &v) in m.indexed_iter() {
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((idx, v));
        }
    }
    best
}

/// Recovers one sense index per term (`csms.len() + 1` terms) from the
/// best cell of the final product. `None` when that product is all zero.
pub fn backtrace(chain: &ProductChain) -> Option<Vec<usize>> {
    let last = chain.products.last()?;
    let ((r, mut c), best) = argmax2(last)?;
    if best <= 0.0 || !best.is_finite() {
        return None;
    }
    let m = chain.csms.len();
    let mut senses = vec![0; m + 1];
    senses[m] = c;
    for k in (1..m).rev() {
        let prev = &chain.products[k - 1];
        let link = &chain.csms[k];
        let mut pick = 0;
        let mut pick_val = f64::NEG_INFINITY;
        for j in 0..link.nrows() {
            let v = prev[[r, j]] * link[[j, c]];
            if v > pick_val {
                pick = j;
                pick_val = v;
            }
        }
        senses[k] = pick;
        c = pick;
    }
    senses[0] = r;
    Some(senses)
}

#[cfg(test)]
mod tests {
    use ndarray::array;
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn single_matrix_chain() {
        let m = array![[0.2, 0.7], [0.9, 0.1]];
        let chain = scsmm(vec![m.clone()]).unwrap();
        assert_eq!(chain.products, vec![m]);
        assert_eq!(backtrace(&chain), Some(vec![1, 0]));
        let one = scsmm(vec![array![[0.3]]]).unwrap();
        assert_eq!(backtrace(&one), Some(vec![0, 0]));
    }

    #[test]
    fn ones_multiply_to_twos() {
        let chain = scsmm(vec![Array2::ones((2, 2)), Array2::ones((2, 2))]).unwrap();
        assert_eq!(chain.products[1], Array2::from_elem((2, 2), 2.0));
        // everything ties, so the lowest indices win
        assert_eq!(backtrace(&chain), Some(vec![0, 0, 0]));
    }

    #[test]
    fn zero_product_has_no_context() {
        let chain = scsmm(vec![array![[1.0, 0.0]], array![[0.0], [0.0]]]).unwrap();
        assert_eq!(backtrace(&chain), None);
        assert!(backtrace(&scsmm(vec![]).unwrap()).is_none());
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let err = scsmm(vec![Array2::ones((2, 3)), Array2::ones((2, 2))]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { index: 1, left_cols: 3, right_rows: 2 }));
    }

    #[test]
    fn backtrace_follows_the_best_path_sum() {
        // three terms; the final argmax (0, 1) is reached mostly through sense 1
        let m0 = array![[0.1, 0.8], [0.3, 0.3]];
        let m1 = array![[0.5, 0.2], [0.1, 0.9]];
        let chain = scsmm(vec![m0, m1]).unwrap();
        let expected = array![[0.05 + 0.08, 0.02 + 0.72], [0.15 + 0.03, 0.06 + 0.27]];
        assert!(chain.products[1].iter().zip(&expected).all(|(a, b)| (a - b).abs() < 1e-12));
        assert_eq!(backtrace(&chain), Some(vec![0, 1, 1]));
    }

    #[test]
    fn weighting_and_normalization() {
        let csm = Csm::weighted(array![[0.5, 0.25], [0.0, 1.0]], &[1.0, 0.5], &[0.2, 1.0], true);
        assert_eq!(csm.scale, Some(0.5));
        assert_eq!(csm.values, array![[0.2, 0.5], [0.0, 1.0]]);
        let flat = Csm::weighted(array![[0.5]], &[1.0], &[1.0], false);
        assert_eq!(flat.values, flat.raw);
        assert!(Csm::weighted(Array2::zeros((2, 2)), &[1.0; 2], &[1.0; 2], true).is_raw_zero());
    }

    fn chain_strategy() -> impl Strategy<Value = Vec<Array2<f64>>> {
        prop::collection::vec(1usize..=5, 2..=5).prop_flat_map(|dims| {
            dims.windows(2)
                .map(|w| {
                    let (r, c) = (w[0], w[1]);
                    prop::collection::vec(0.0f64..=1.0, r * c)
                        .prop_map(move |v| Array2::from_shape_vec((r, c), v).unwrap())
                })
                .collect::<Vec<_>>()
        })
    }

    /// Sum over every sense path from `r` in the first term to `c` in the
    /// last, of the product of the cells along it.
    fn path_sum(csms: &[Array2<f64>], r: usize, c: usize) -> f64 {
        fn walk(csms: &[Array2<f64>], at: usize, goal: usize, acc: f64) -> f64 {
            match csms.split_first() {
                None => if at == goal { acc } else { 0.0 },
                Some((m, rest)) => (0..m.ncols()).map(|j| walk(rest, j, goal, acc * m[[at, j]])).sum(),
            }
        }
        walk(csms, r, c, 1.0)
    }

    /// Straight-line restatement of the greedy decomposition.
    fn reference_backtrace(csms: &[Array2<f64>]) -> Option<Vec<usize>> {
        let n = csms.len();
        let (rows, cols) = (csms[0].nrows(), csms[n - 1].ncols());
        let mut best = (0, 0, path_sum(csms, 0, 0));
        for r in 0..rows {
            for c in 0..cols {
                let v = path_sum(csms, r, c);
                if v > best.2 {
                    best = (r, c, v);
                }
            }
        }
        if best.2 <= 0.0 {
            return None;
        }
        let (r, mut c) = (best.0, best.1);
        let mut out = vec![0; n + 1];
        out[0] = r;
        out[n] = c;
        for k in (1..n).rev() {
            let scores: Vec<f64> = (0..csms[k].nrows()).map(|j| path_sum(&csms[..k], r, j) * csms[k][[j, c]]).collect();
            let mut j_best = 0;
            for (j, &s) in scores.iter().enumerate() {
                if s > scores[j_best] {
                    j_best = j;
                }
            }
            out[k] = j_best;
            c = j_best;
        }
        Some(out)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn products_equal_path_sums(csms in chain_strategy()) {
            let chain = scsmm(csms.clone()).unwrap();
            for (k, p) in chain.products.iter().enumerate() {
                prop_assert_eq!(p.nrows(), csms[0].nrows());
                prop_assert_eq!(p.ncols(), csms[k].ncols());
                for ((r, c), &v) in p.indexed_iter() {
                    let oracle = path_sum(&csms[..=k], r, c);
                    prop_assert!((v - oracle).abs() <= 1e-9 * oracle.abs().max(1e-300), "{} vs {}", v, oracle);
                }
            }
        }

        #[test]
        fn backtrace_matches_reference(csms in chain_strategy()) {
            let chain = scsmm(csms.clone()).unwrap();
            prop_assert_eq!(backtrace(&chain), reference_backtrace(&csms));
        }

        #[test]
        fn scaling_one_matrix_keeps_the_selection(csms in chain_strategy(), pick in 0usize..4, alpha in 1e-3f64..=10.0) {
            let base = backtrace(&scsmm(csms.clone()).unwrap());
            let mut scaled = csms.clone();
            let k = pick % scaled.len();
            scaled[k].mapv_inplace(|v| v * alpha);
            let chain = scsmm(scaled).unwrap();
            let reference = scsmm(csms).unwrap();
            for (p, q) in chain.products[k..].iter().zip(&reference.products[k..]) {
                for (a, b) in p.iter().zip(q) {
                    prop_assert!((a - alpha * b).abs() <= 1e-9 * (alpha * b).abs().max(1e-300));
                }
            }
            prop_assert_eq!(backtrace(&chain), base);
        }
    }
}
