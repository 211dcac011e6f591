//! Matrix elements of the su(1,1) generators on the |k, m> ladder.
//!
//! K0 |k,m> = (k+m) |k,m>
//! K+ |k,m> = sqrt((m+1)(m+2k)) |k,m+1>
//! K- |k,m> = sqrt(m(m+2k-1)) |k,m-1>

use crate::params::BargmannIndex;
use crate::real::Real;

/// A ladder state |k, m>.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisLabel {
    pub k: BargmannIndex,
    pub m: usize,
}

/// The three generator coefficients on one ladder state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderElements<R> {
    /// K0 eigenvalue k + m.
    pub k0: R,
    /// Coefficient of |k, m+1> under K+.
    pub raising: R,
    /// Coefficient of |k, m-1> under K-; zero on the lowest-weight state.
    pub lowering: R,
}

pub fn raising_coeff<R: Real>(k_value: R, m: usize) -> R {
    let m = R::of_usize(m);
    ((m + R::one()) * (m + R::two() * k_value)).sqrt()
}

pub fn lowering_coeff<R: Real>(k_value: R, m: usize) -> R {
    if m == 0 {
        return R::zero();
    }
    let m = R::of_usize(m);
    (m * (m + R::two() * k_value - R::one())).sqrt()
}

pub fn elements<R: Real>(label: BasisLabel) -> LadderElements<R> {
    let k = label.k.value::<R>();
    LadderElements {
        k0: k + R::of_usize(label.m),
        raising: raising_coeff(k, label.m),
        lowering: lowering_coeff(k, label.m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(p: i64, q: i64, m: usize) -> BasisLabel {
        BasisLabel { k: BargmannIndex::new(p, q).unwrap(), m }
    }

    #[test]
    fn lowest_weight_state() {
        let e: LadderElements<f64> = elements(label(1, 2, 0));
        assert_eq!(e.k0, 0.5);
        assert_eq!(e.raising, 1.0);
        assert_eq!(e.lowering, 0.0);
    }

    #[test]
    fn quarter_index() {
        let e: LadderElements<f64> = elements(label(1, 4, 2));
        assert!((e.k0 - 2.25).abs() < 1e-15);
        assert!((e.raising - 7.5f64.sqrt()).abs() < 1e-15);
        assert!((e.lowering - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn integer_index() {
        let e: LadderElements<f64> = elements(label(1, 1, 1));
        assert!((e.k0 - 2.0).abs() < 1e-15);
        assert!((e.raising - 6f64.sqrt()).abs() < 1e-15);
        assert!((e.lowering - 2f64.sqrt()).abs() < 1e-15);
    }

    /// Commutators on small dense matrices built from the coefficients.
    /// Truncation spoils only the last row of [K+, K-].
    #[test]
    fn truncated_commutators() {
        let n = 30usize;
        let k = 0.75f64;
        let mut k0 = vec![vec![0.0; n]; n];
        let mut kp = vec![vec![0.0; n]; n];
        let mut km = vec![vec![0.0; n]; n];
        for m in 0..n {
            k0[m][m] = k + m as f64;
            if m + 1 < n {
                kp[m + 1][m] = raising_coeff(k, m);
                km[m][m + 1] = lowering_coeff(k, m + 1);
            }
        }
        let mul = |a: &Vec<Vec<f64>>, b: &Vec<Vec<f64>>| {
            let mut c = vec![vec![0.0; n]; n];
            for i in 0..n {
                for l in 0..n {
                    if a[i][l] == 0.0 {
                        continue;
                    }
                    for j in 0..n {
                        c[i][j] += a[i][l] * b[l][j];
                    }
                }
            }
            c
        };
        let comm = |a: &Vec<Vec<f64>>, b: &Vec<Vec<f64>>| {
            let ab = mul(a, b);
            let ba = mul(b, a);
            let mut c = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    c[i][j] = ab[i][j] - ba[i][j];
                }
            }
            c
        };

        // [K0, K+] = +K+ and [K0, K-] = -K- on every row
        let c1 = comm(&k0, &kp);
        let c2 = comm(&k0, &km);
        for i in 0..n {
            for j in 0..n {
                assert!((c1[i][j] - kp[i][j]).abs() < 1e-12);
                assert!((c2[i][j] + km[i][j]).abs() < 1e-12);
            }
        }

        // [K+, K-] = -2 K0 on rows 0..n-1
        let c3 = comm(&kp, &km);
        for i in 0..n - 1 {
            for j in 0..n {
                assert!((c3[i][j] + 2.0 * k0[i][j]).abs() < 1e-12, "row {i} col {j}");
            }
        }

        // Casimir K0^2 - (K+K- + K-K+)/2 = k(k-1) on rows 0..n-1
        let k0sq = mul(&k0, &k0);
        let sym = mul(&kp, &km);
        let sym2 = mul(&km, &kp);
        for i in 0..n - 1 {
            for j in 0..n {
                let c = k0sq[i][j] - 0.5 * (sym[i][j] + sym2[i][j]);
                let expect = if i == j { k * (k - 1.0) } else { 0.0 };
                assert!((c - expect).abs() < 1e-11, "casimir row {i} col {j}");
            }
        }
    }
}
