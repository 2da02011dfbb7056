//! Finite-dimensional *-algebra generation by exact span saturation.
//!
//! Used to compare the algebras generated by permutation-plus-trivial
//! representations of S_n and its derived subgroup, and to compute the
//! z = 1 fiber algebra of level-k Koopman images.

use crate::error::{Error, Result};
use crate::exact_matrix::{ExactMatrix, VectorSpan};
use crate::full_group::FullGroupElement;
use crate::koopman::koopman_matrix;
use crate::odometer::OdometerType;
use crate::perm::Perm;

/// A basis of a unital *-subalgebra of M_d, closed under product and
/// adjoint, kept with an exact echelon span for membership tests.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    matrix_dim: usize,
    basis: Vec<ExactMatrix>,
    span: VectorSpan,
}

impl SpanBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_dim(&self) -> usize {
        self.matrix_dim
    }

    pub fn basis(&self) -> &[ExactMatrix] {
        &self.basis
    }

    pub fn contains(&self, m: &ExactMatrix) -> bool {
        m.dim() == self.matrix_dim && self.span.contains(&m.flatten())
    }

    pub fn contains_subspace(&self, other: &SpanBasis) -> bool {
        other.basis.iter().all(|m| self.contains(m))
    }
}

/// The representation of S_n as trivial summand plus permutation matrices:
/// an (n+1) x (n+1) block-diagonal matrix 1 (+) P_sigma.
pub fn perm_plus_trivial(sigma: &Perm) -> ExactMatrix {
    let n = sigma.len();
    let mut out = ExactMatrix::zero(n + 1);
    *out.get_mut(0, 0) = crate::scalar::GaussRational::from_integer(1);
    for j in 0..n {
        *out.get_mut(sigma.apply(j) + 1, j + 1) = crate::scalar::GaussRational::from_integer(1);
    }
    out
}

/// The smallest unital subspace containing the generators and closed under
/// product and adjoint.
///
/// Saturation loop: extend the basis by adjoints and pairwise products
/// until the dimension stabilizes; bounded by d^2, so it terminates.
pub fn span_saturate(generators: &[ExactMatrix]) -> Result<SpanBasis> {
    let dim = match generators.first() {
        Some(g) => g.dim(),
        None => 1,
    };
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch(dim, g.dim()));
        }
    }
    let mut span = VectorSpan::new();
    let mut basis: Vec<ExactMatrix> = Vec::new();
    let mut push = |m: ExactMatrix, span: &mut VectorSpan, basis: &mut Vec<ExactMatrix>| {
        if span.insert(m.flatten()) {
            basis.push(m);
        }
    };
    push(ExactMatrix::identity(dim), &mut span, &mut basis);
    for g in generators {
        push(g.clone(), &mut span, &mut basis);
        push(g.adjoint(), &mut span, &mut basis);
    }
    loop {
        let before = basis.len();
        let snapshot = basis.clone();
        for a in &snapshot {
            push(a.adjoint(), &mut span, &mut basis);
            for b in &snapshot {
                push(a.mul(b).expect("same dimension"), &mut span, &mut basis);
            }
        }
        if basis.len() == before {
            break;
        }
    }
    Ok(SpanBasis {
        matrix_dim: dim,
        basis,
        span,
    })
}

/// Whether two generating sets produce the same *-algebra, by mutual
/// containment of the saturated spans.
pub fn same_algebra(gens_a: &[ExactMatrix], gens_b: &[ExactMatrix]) -> Result<bool> {
    let a = span_saturate(gens_a)?;
    let b = span_saturate(gens_b)?;
    if a.matrix_dim != b.matrix_dim {
        return Err(Error::DimensionMismatch(a.matrix_dim, b.matrix_dim));
    }
    Ok(a.contains_subspace(&b) && b.contains_subspace(&a))
}

fn exact_in_bk(m: &ExactMatrix) -> bool {
    let rows = m.row_sums();
    let cols = m.col_sums();
    let first = &rows[0];
    rows.iter().all(|r| r == first) && cols.iter().all(|c| c == first)
}

/// The algebra generated by the z = 1 fibers of the Koopman matrices of a
/// sample of level-k elements.
///
/// Every element of the result satisfies the equal-row-and-column-sum
/// condition; for the full sweep of tower permutations the dimension is
/// (n_k - 1)^2 + 1.
pub fn bk_fiber_algebra(
    space: &OdometerType,
    level: usize,
    sample: &[FullGroupElement],
) -> Result<SpanBasis> {
    let fibers: Vec<ExactMatrix> = sample
        .iter()
        .map(|g| Ok(koopman_matrix(space, g, level)?.eval_at_one()))
        .collect::<Result<_>>()?;
    let basis = span_saturate(&fibers)?;
    for m in basis.basis() {
        assert!(exact_in_bk(m), "fiber algebra left B_k");
    }
    Ok(basis)
}

/// Generators of S_n: a transposition and the full cycle.
pub fn symmetric_generators(n: usize) -> Vec<Perm> {
    if n < 2 {
        return vec![Perm::identity(n)];
    }
    let cycle: Vec<usize> = (0..n).collect();
    vec![
        Perm::transposition(n, 0, 1).expect("valid"),
        Perm::from_cycles(n, &[&cycle]).expect("valid"),
    ]
}

/// Generators of the alternating group A_n.
pub fn alternating_generators(n: usize) -> Vec<Perm> {
    match n {
        0..=2 => vec![Perm::identity(n)],
        3 => vec![Perm::from_cycles(3, &[&[0, 1, 2]]).expect("valid")],
        _ => {
            // 3-cycles (0 1 2) and (0 1)(2 .. n-1) patterns generate A_n;
            // use the standard pair (0 1 2), (0 1 .. n-1) for odd n and
            // (0 1 2), (1 2 .. n-1) for even n
            let three = Perm::from_cycles(n, &[&[0, 1, 2]]).expect("valid");
            let big = if n % 2 == 1 {
                let c: Vec<usize> = (0..n).collect();
                Perm::from_cycles(n, &[&c]).expect("valid")
            } else {
                let c: Vec<usize> = (1..n).collect();
                Perm::from_cycles(n, &[&c]).expect("valid")
            };
            vec![three, big]
        }
    }
}

/// All elements of the subgroup generated by the given permutations.
pub fn permutation_group_closure(gens: &[Perm]) -> Vec<Perm> {
    let n = gens.first().map(|g| g.len()).unwrap_or(0);
    let mut seen: std::collections::BTreeSet<Vec<usize>> =
        [Perm::identity(n).as_slice().to_vec()].into();
    let mut frontier = vec![Perm::identity(n)];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = g.compose(&p);
            if seen.insert(q.as_slice().to_vec()) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter()
        .map(|v| Perm::new(v).expect("closure of valid perms"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_plus_trivial_examples() {
        assert_eq!(
            perm_plus_trivial(&Perm::identity(3)),
            ExactMatrix::identity(4)
        );
        let t = perm_plus_trivial(&Perm::transposition(2, 0, 1).unwrap());
        assert_eq!(*t.get(0, 0), crate::scalar::GaussRational::from_integer(1));
        assert_eq!(*t.get(1, 2), crate::scalar::GaussRational::from_integer(1));
        assert_eq!(*t.get(2, 1), crate::scalar::GaussRational::from_integer(1));
        assert!(t.get(1, 1).is_zero());
    }

    #[test]
    fn rho_is_multiplicative() {
        let perms = Perm::all(4);
        for a in perms.iter().take(8) {
            for b in perms.iter().rev().take(8) {
                let lhs = perm_plus_trivial(&a.compose(b));
                let rhs = perm_plus_trivial(a)
                    .mul(&perm_plus_trivial(b))
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn saturate_identity_only() {
        let basis = span_saturate(&[ExactMatrix::identity(3)]).unwrap();
        assert_eq!(basis.dim(), 1);
    }

    #[test]
    fn saturate_s4_dimension() {
        // trivial isotypic is scalar, standard 3-dim irrep fills M_3: 1 + 9
        let gens: Vec<ExactMatrix> = symmetric_generators(4)
            .iter()
            .map(perm_plus_trivial)
            .collect();
        assert_eq!(span_saturate(&gens).unwrap().dim(), 10);
    }

    #[test]
    fn saturate_a3_dimension() {
        // Z_3 regular representation: three characters, trivial ones merge
        let gens: Vec<ExactMatrix> = alternating_generators(3)
            .iter()
            .map(perm_plus_trivial)
            .collect();
        assert_eq!(span_saturate(&gens).unwrap().dim(), 3);
    }

    #[test]
    fn same_algebra_examples() {
        let rho = |perms: Vec<Perm>| -> Vec<ExactMatrix> {
            perms.iter().map(perm_plus_trivial).collect()
        };
        assert!(same_algebra(
            &rho(symmetric_generators(4)),
            &rho(alternating_generators(4))
        )
        .unwrap());
        assert!(!same_algebra(
            &rho(symmetric_generators(3)),
            &rho(alternating_generators(3))
        )
        .unwrap());
        assert!(same_algebra(
            &rho(symmetric_generators(5)),
            &rho(alternating_generators(5))
        )
        .unwrap());
    }

    #[test]
    fn s3_vs_a3_dimensions_are_sharp() {
        let s3: Vec<ExactMatrix> = symmetric_generators(3)
            .iter()
            .map(perm_plus_trivial)
            .collect();
        let a3: Vec<ExactMatrix> = alternating_generators(3)
            .iter()
            .map(perm_plus_trivial)
            .collect();
        assert_eq!(span_saturate(&s3).unwrap().dim(), 5);
        assert_eq!(span_saturate(&a3).unwrap().dim(), 3);
    }

    #[test]
    fn closure_orders() {
        assert_eq!(permutation_group_closure(&symmetric_generators(4)).len(), 24);
        assert_eq!(permutation_group_closure(&alternating_generators(4)).len(), 12);
        assert_eq!(permutation_group_closure(&alternating_generators(5)).len(), 60);
        for p in permutation_group_closure(&alternating_generators(4)) {
            assert!(p.is_even());
        }
    }

    #[test]
    fn bk_fiber_dimensions() {
        use crate::full_group::sigma_element;
        use crate::odometer::ClopenSet;
        for (levels, level, n) in [(vec![2u64, 4], 1usize, 2usize), (vec![3, 6], 1, 3)] {
            let sp = OdometerType::new(levels).unwrap();
            let base = ClopenSet::cylinder(&sp, level, 0).unwrap();
            let sample: Vec<FullGroupElement> = Perm::all(n)
                .iter()
                .map(|s| sigma_element(&sp, &base, s).unwrap())
                .collect();
            let basis = bk_fiber_algebra(&sp, level, &sample).unwrap();
            assert_eq!(basis.dim(), (n - 1) * (n - 1) + 1);
        }
        let sp = OdometerType::new(vec![2, 4]).unwrap();
        let basis = bk_fiber_algebra(&sp, 2, &[FullGroupElement::identity()]).unwrap();
        assert_eq!(basis.dim(), 1);
    }
}
