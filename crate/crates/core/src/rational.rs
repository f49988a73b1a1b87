//! Exact rational linear algebra over semiflow generators: basis extraction,
//! cone membership over the non-negative rationals, and linear solves over
//! the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::farkas::FundamentalSet;
use crate::vector::{Semiflow, Support};

/// Rational coefficients aligned with a generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCoeffs(Vec<BigRational>);

impl RationalCoeffs {
    pub fn new(values: Vec<BigRational>) -> Self {
        RationalCoeffs(values)
    }

    pub fn from_integers(values: &[i64]) -> Self {
        RationalCoeffs(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn values(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_non_negative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// `sum_i values[i] * gens[i]`.
    pub fn combine(&self, gens: &[Semiflow], dim: usize) -> Result<Vec<BigRational>> {
        check_dim(self.0.len(), gens.len())?;
        let mut acc = vec![BigRational::zero(); dim];
        for (alpha, g) in self.0.iter().zip(gens) {
            check_dim(dim, g.len())?;
            for (a, c) in acc.iter_mut().zip(g.coords()) {
                *a += alpha * BigRational::from_integer(BigInt::from(c.clone()));
            }
        }
        Ok(acc)
    }

    /// True iff the combination of `gens` equals `f` exactly.
    pub fn reconstructs(&self, f: &Semiflow, gens: &[Semiflow]) -> bool {
        match self.combine(gens, f.len()) {
            Ok(v) => v == to_rational(f),
            Err(_) => false,
        }
    }
}

impl fmt::Display for RationalCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn to_rational(v: &Semiflow) -> Vec<BigRational> {
    v.coords()
        .iter()
        .map(|c| BigRational::from_integer(BigInt::from(c.clone())))
        .collect()
}

fn check_gens(dim: usize, gens: &[Semiflow]) -> Result<()> {
    gens.iter().try_for_each(|g| check_dim(dim, g.len()))
}

/// Indices of a maximal linearly independent sublist, chosen greedily left to right.
pub fn q_basis_indices(gens: &[Semiflow]) -> Vec<usize> {
    // Each stored vector is zero at the pivots of all vectors stored before it.
    let mut reduced: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut picked = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        let mut v = to_rational(g);
        for (pivot, b) in &reduced {
            if !v[*pivot].is_zero() {
                let factor = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &factor * y;
                }
            }
        }
        if let Some(pivot) = v.iter().position(|x| !x.is_zero()) {
            let lead = v[pivot].clone();
            for x in v.iter_mut() {
                *x /= &lead;
            }
            reduced.push((pivot, v));
            picked.push(k);
        }
    }
    picked
}

pub fn extract_q_basis(gens: &[Semiflow]) -> Vec<Semiflow> {
    q_basis_indices(gens)
        .into_iter()
        .map(|i| gens[i].clone())
        .collect()
}

pub fn rank(gens: &[Semiflow]) -> usize {
    q_basis_indices(gens).len()
}

/// Any rational solution of `f = sum_i alpha_i gens[i]`, or `None` when `f`
/// lies outside the span.
pub fn solve_q(f: &Semiflow, gens: &[Semiflow]) -> Result<Option<RationalCoeffs>> {
    let d = f.len();
    check_gens(d, gens)?;
    let q = gens.len();
    // Augmented system: one row per place, one column per generator, then f.
    let mut m: Vec<Vec<BigRational>> = (0..d)
        .map(|p| {
            gens.iter()
                .map(|g| BigRational::from_integer(BigInt::from(g.coords()[p].clone())))
                .chain(std::iter::once(BigRational::from_integer(BigInt::from(
                    f.coords()[p].clone(),
                ))))
                .collect()
        })
        .collect();

    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..q {
        let Some(r) = (row..d).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, r);
        let lead = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x /= &lead;
        }
        for r in 0..d {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[q].is_zero()) {
        return Ok(None);
    }
    let mut alpha = vec![BigRational::zero(); q];
    for (r, &col) in pivots.iter().enumerate() {
        alpha[col] = m[r][q].clone();
    }
    Ok(Some(RationalCoeffs(alpha)))
}

/// Non-negative rational coefficients with `f = sum_i alpha_i gens[i]`, or
/// `None` when `f` is outside the cone spanned by `gens`.
///
/// Phase-one simplex on `G alpha + s = f`, `alpha, s >= 0` with artificial
/// variables `s`, using Bland's rule so the pivoting cannot cycle.
pub fn in_cone(f: &Semiflow, gens: &[Semiflow]) -> Result<Option<RationalCoeffs>> {
    let d = f.len();
    check_gens(d, gens)?;
    let q = gens.len();
    let n = q + d;
    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());

    // Row p: [g_0[p] .. g_{q-1}[p] | unit(p) | f[p]]; f >= 0 so the
    // artificial basis is feasible from the start.
    let mut tab: Vec<Vec<BigRational>> = (0..d)
        .map(|p| {
            let mut row: Vec<BigRational> = gens
                .iter()
                .map(|g| BigRational::from_integer(BigInt::from(g.coords()[p].clone())))
                .collect();
            row.extend((0..d).map(|k| if k == p { one.clone() } else { zero.clone() }));
            row.push(BigRational::from_integer(BigInt::from(f.coords()[p].clone())));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (q..n).collect();

    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost: Vec<BigRational> = vec![zero.clone(); n + 1];
    for row in &tab {
        for j in 0..q {
            cost[j] -= &row[j];
        }
        cost[n] -= &row[n];
    }

    while let Some(enter) = (0..n).find(|&j| cost[j].is_negative()) {
        let leave = (0..d)
            .filter(|&r| tab[r][enter].is_positive())
            .min_by(|&a, &b| {
                let ra = &tab[a][n] / &tab[a][enter];
                let rb = &tab[b][n] / &tab[b][enter];
                ra.cmp(&rb).then(basis[a].cmp(&basis[b]))
            });
        let Some(leave) = leave else {
            // Cannot happen: the phase-one objective is bounded below by zero.
            return Err(Error::Internal("unbounded phase-one simplex".into()));
        };
        let lead = tab[leave][enter].clone();
        for x in tab[leave].iter_mut() {
            *x /= &lead;
        }
        let pivot_row = tab[leave].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r != leave && !row[enter].is_zero() {
                let factor = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        if !cost[enter].is_zero() {
            let factor = cost[enter].clone();
            for (x, y) in cost.iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
        }
        basis[leave] = enter;
    }

    if !cost[n].is_zero() {
        return Ok(None);
    }
    let mut alpha = vec![zero; q];
    for (r, &var) in basis.iter().enumerate() {
        if var < q {
            alpha[var] = tab[r][n].clone();
        }
    }
    Ok(Some(RationalCoeffs(alpha)))
}

/// Decomposition of a semiflow over the fundamental members whose supports
/// lie inside its own support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportCover {
    /// Indices into the fundamental set.
    pub members: Vec<usize>,
    /// Non-negative coefficients parallel to `members`.
    pub coeffs: RationalCoeffs,
    /// Whether the selected supports union to the support of the input.
    pub covers_support: bool,
}

pub fn support_cover_decompose(f: &Semiflow, fs: &FundamentalSet) -> Result<SupportCover> {
    let support = f.support();
    if let Some(g) = fs.members().first() {
        check_dim(g.len(), f.len())?;
    }
    let members: Vec<usize> = fs
        .supports()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_subset(&support))
        .map(|(i, _)| i)
        .collect();
    let gens: Vec<Semiflow> = members.iter().map(|&i| fs.members()[i].clone()).collect();
    let coeffs = in_cone(f, &gens)?.ok_or_else(|| {
        Error::Internal(format!(
            "semiflow {f} is not a non-negative combination of the fundamental members inside its support"
        ))
    })?;
    let union = members
        .iter()
        .fold(Support::empty(f.len()), |acc, &i| acc.union(&fs.supports()[i]));
    Ok(SupportCover {
        members,
        coeffs,
        covers_support: union == support,
    })
}
