use num_traits::{One, Zero};

use super::MatrixField;
use crate::linalg::{Matrix, QMatrix};
use crate::scalars::{GaussianRational, Monomial, Poly, RationalField};

/// All monomials in `vars` variables of total degree at most `bound`.
fn monomials(vars: usize, bound: u32) -> Vec<Monomial> {
    fn rec(vars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == vars {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(vars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, bound, &mut Vec::new(), &mut out);
    out
}

/// Centre of `M_n(C^∞(U))` restricted to polynomial entries of total degree
/// at most `degree_bound` in `base_dim` variables.
///
/// Solves `[c, g] = 0` for `g` ranging over the constant matrix units and the
/// coordinate functions `x_k·𝟙`, with the coefficients of every entry of `c`
/// as unknowns. The solution space is then reduced to a basis over the base
/// functions: a maximal subset independent over rational functions, each
/// element divided by its first nonzero entry.
pub fn center_basis(n: usize, base_dim: usize, degree_bound: u32) -> Vec<MatrixField> {
    let monos = monomials(base_dim, degree_bound);
    let nm = monos.len();
    let unknowns = n * n * nm;
    let var = |i: usize, j: usize, m: usize| (i * n + j) * nm + m;
    let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
    // [c, E_pq](i, j) = c(i, p)[j = q] − [i = p] c(q, j), monomial by monomial.
    // Commutators with x_k·𝟙 vanish identically and add no rows.
    for p in 0..n {
        for q in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for m in 0..nm {
                        let mut row = vec![GaussianRational::zero(); unknowns];
                        if j == q {
                            row[var(i, p, m)] += &GaussianRational::one();
                        }
                        if i == p {
                            row[var(q, j, m)] -= &GaussianRational::one();
                        }
                        if row.iter().any(|c| !c.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let solutions = if rows.is_empty() {
        (0..unknowns)
            .map(|k| {
                let mut v = vec![GaussianRational::zero(); unknowns];
                v[k] = GaussianRational::one();
                v
            })
            .collect()
    } else {
        QMatrix::from_rows(rows).expect("rectangular").nullspace()
    };
    let fields: Vec<MatrixField> = solutions
        .iter()
        .map(|v| {
            MatrixField::from_fn(n, |i, j| {
                RationalField::from_poly(Poly::from_terms(
                    (0..nm).map(|m| (monos[m].clone(), v[var(i, j, m)].clone())),
                ))
            })
        })
        .collect();
    module_basis(n, &fields)
}

fn module_basis(n: usize, fields: &[MatrixField]) -> Vec<MatrixField> {
    let mut chosen: Vec<MatrixField> = Vec::new();
    for f in fields {
        let mut candidate = chosen.clone();
        candidate.push(f.clone());
        let m = Matrix::from_fn(candidate.len(), n * n, |r, c| candidate[r].entry(c / n, c % n).clone());
        if m.rank() == candidate.len() {
            chosen.push(f.clone());
        }
    }
    chosen
        .into_iter()
        .map(|f| {
            let lead = f.matrix().entries().iter().find(|e| !e.is_zero()).cloned().expect("nonzero solution");
            f.scale(&lead.inv().expect("nonzero"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_count() {
        // C(m + d, d)
        assert_eq!(monomials(2, 3).len(), 10);
        assert_eq!(monomials(1, 0).len(), 1);
    }

    #[test]
    fn centre_of_2x2_is_scalars() {
        for bound in 0..=2 {
            let basis = center_basis(2, 1, bound);
            assert_eq!(basis, vec![MatrixField::identity(2)]);
        }
    }

    #[test]
    fn commutative_case() {
        let basis = center_basis(1, 2, 2);
        assert_eq!(basis, vec![MatrixField::identity(1)]);
    }
}
