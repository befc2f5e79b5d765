//! Exact feasibility of homogeneous strict linear systems.
//!
//! A [`HomogeneousSystem`] is a list of labeled rows `r` over rational
//! variables `x`, asking whether some `x` satisfies `<r, x> < 0` for every row
//! simultaneously. Strict homogeneous systems are invariant under positive
//! scaling, so the question is equivalent to the margin form `<r, x> <= -1`.
//! [`HomogeneousSystem::feasible_strict`] decides it exactly over the
//! rationals and always returns checkable evidence:
//!
//! * [`Feasibility::Feasible`] carries a witness `x`;
//! * [`Feasibility::Infeasible`] carries a nonnegative, nonzero combination
//!   `y` of the rows that sums to the zero vector, refuting every candidate
//!   `x` at once. The combination is scaled to primitive integers.
//!
//! The decision runs a primal simplex with Bland's rule on the certificate
//! side: the auxiliary program `{A^T y = 0, sum y = 1, y >= 0}` is feasible
//! exactly when a certificate exists, and when it is not, the phase-one duals
//! yield a witness with margin 1. The auxiliary tableau has only
//! `num_vars + 1` constraint rows, so systems with many rows over few
//! variables stay cheap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Integer constant as a rational.
pub fn rat(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

/// Rational constant `num / den`.
pub fn ratio(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// One labeled inequality `<coeffs, x> < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    label: String,
    coeffs: Vec<Rat>,
}

impl Row {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }
}

/// A conjunction of strict homogeneous inequalities over a fixed variable
/// count. Rows keep insertion order; labels are free-form tags for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousSystem {
    num_vars: usize,
    rows: Vec<Row>,
}

/// Outcome of [`HomogeneousSystem::feasible_strict`], always with evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// A point satisfying every row strictly.
    Feasible(Vec<Rat>),
    /// Per-row multipliers proving no such point exists.
    Infeasible(Vec<Rat>),
}

impl HomogeneousSystem {
    pub fn new(num_vars: usize) -> Self {
        HomogeneousSystem {
            num_vars,
            rows: Vec::new(),
        }
    }

    /// Appends the inequality `<coeffs, x> < 0`.
    ///
    /// Panics when `coeffs` does not match the variable count.
    pub fn push_row(&mut self, label: impl Into<String>, coeffs: Vec<Rat>) {
        assert_eq!(
            coeffs.len(),
            self.num_vars,
            "row length must equal num_vars"
        );
        self.rows.push(Row {
            label: label.into(),
            coeffs,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// First row carrying `label`, if any.
    pub fn row_by_label(&self, label: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// Deterministic text rendering: one `label: c1 c2 ... ck` line per row,
    /// in insertion order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&r.label);
            out.push(':');
            for c in &r.coeffs {
                out.push(' ');
                out.push_str(&c.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Decides whether some `x` satisfies every row strictly.
    ///
    /// Deterministic: identical systems produce identical evidence vectors.
    pub fn feasible_strict(&self) -> Feasibility {
        let nv = self.num_vars;
        let nr = self.rows.len();
        if nr == 0 {
            // No constraints: the origin satisfies the empty conjunction.
            return Feasibility::Feasible(vec![Rat::zero(); nv]);
        }

        // Auxiliary program over y: A^T y = 0 (one equation per variable),
        // sum y = 1, y >= 0, plus one artificial per equation. Its feasibility
        // is exactly the existence of an infeasibility certificate.
        let ncons = nv + 1;
        let rhs = nr + ncons;
        let mut tab: Vec<Vec<Rat>> = vec![vec![Rat::zero(); rhs + 1]; ncons];
        for (j, row) in self.rows.iter().enumerate() {
            for (t, c) in tab.iter_mut().zip(&row.coeffs) {
                t[j] = c.clone();
            }
            tab[nv][j] = Rat::one();
        }
        for (i, row) in tab.iter_mut().enumerate() {
            row[nr + i] = Rat::one();
        }
        tab[nv][rhs] = Rat::one();

        // Reduced costs under the all-artificial basis: cost 1 on artificials,
        // 0 on y, so the y entries start at minus their column sums.
        let mut zrow: Vec<Rat> = vec![Rat::zero(); rhs + 1];
        for j in 0..nr {
            let mut s = Rat::zero();
            for row in &tab {
                s += &row[j];
            }
            zrow[j] = -s;
        }
        zrow[rhs] = -Rat::one();
        let mut basis: Vec<usize> = (nr..nr + ncons).collect();

        // Bland: entering column is the lowest-index negative reduced cost.
        while let Some(pc) = (0..rhs).find(|&j| zrow[j].is_negative()) {
            // Leaving row by minimum ratio, ties to the lowest basic variable.
            let mut choice: Option<(usize, Rat)> = None;
            for i in 0..ncons {
                if tab[i][pc].is_positive() {
                    let r = &tab[i][rhs] / &tab[i][pc];
                    let better = match &choice {
                        None => true,
                        Some((bi, br)) => r < *br || (r == *br && basis[i] < basis[*bi]),
                    };
                    if better {
                        choice = Some((i, r));
                    }
                }
            }
            // sum y = 1 and y >= 0 bound the feasible region, so an entering
            // column always has a blocking row.
            let (pr, _) = choice.expect("auxiliary program is bounded");

            let piv = tab[pr][pc].clone();
            for v in tab[pr].iter_mut() {
                *v /= &piv;
            }
            let prow = tab[pr].clone();
            for (i, row) in tab.iter_mut().enumerate() {
                if i != pr && !row[pc].is_zero() {
                    let f = row[pc].clone();
                    for (v, p) in row.iter_mut().zip(&prow) {
                        *v -= &f * p;
                    }
                }
            }
            if !zrow[pc].is_zero() {
                let f = zrow[pc].clone();
                for (v, p) in zrow.iter_mut().zip(&prow) {
                    *v -= &f * p;
                }
            }
            basis[pr] = pc;
        }

        let z = -zrow[rhs].clone();
        if z.is_zero() {
            // The auxiliary program is feasible: read off the certificate.
            let mut y = vec![Rat::zero(); nr];
            for (i, &b) in basis.iter().enumerate() {
                if b < nr {
                    y[b] = tab[i][rhs].clone();
                }
            }
            let y = primitive_integral(&y);
            debug_assert!(check_certificate(self, &y));
            Feasibility::Infeasible(y)
        } else {
            // The auxiliary program is infeasible: its phase-one duals (x, t)
            // appear as 1 minus the artificial reduced costs and satisfy
            // <r, x> <= -t with t = z > 0, so x/t has margin 1.
            let t = Rat::one() - &zrow[nr + nv];
            debug_assert_eq!(t, z);
            let x: Vec<Rat> = (0..nv).map(|i| (Rat::one() - &zrow[nr + i]) / &t).collect();
            debug_assert!(check_witness(self, &x));
            Feasibility::Feasible(x)
        }
    }
}

/// Scales a rational vector to integers with no common factor. Zero vectors
/// are returned unchanged.
fn primitive_integral(v: &[Rat]) -> Vec<Rat> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &l / x.denom()).collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter()
        .map(|i| BigRational::from_integer(i / &g))
        .collect()
}

/// True when every row of `system` has strictly negative inner product with
/// `x`. Panics when `x` has the wrong length.
pub fn check_witness(system: &HomogeneousSystem, x: &[Rat]) -> bool {
    assert_eq!(
        x.len(),
        system.num_vars,
        "witness length must equal num_vars"
    );
    system.rows.iter().all(|r| {
        let s = r
            .coeffs
            .iter()
            .zip(x)
            .fold(Rat::zero(), |acc, (c, v)| acc + c * v);
        s.is_negative()
    })
}

/// True when `y` is nonnegative, not identically zero, and combines the rows
/// of `system` to the zero vector. Panics when `y` has the wrong length.
pub fn check_certificate(system: &HomogeneousSystem, y: &[Rat]) -> bool {
    assert_eq!(
        y.len(),
        system.rows.len(),
        "certificate length must equal row count"
    );
    if y.iter().any(|v| v.is_negative()) || y.iter().all(|v| v.is_zero()) {
        return false;
    }
    (0..system.num_vars).all(|i| {
        let s = system
            .rows
            .iter()
            .zip(y)
            .fold(Rat::zero(), |acc, (r, w)| acc + &r.coeffs[i] * w);
        s.is_zero()
    })
}
