//! Differential, cup product, braces and the Gerstenhaber bracket.
//!
//! Every operation is a signed sum of [`CochainModel::substitute`] composites.
//! The differential differs from the classical Hochschild coboundary `δ` by
//! the global factor `(−1)^{k−1}` on `C^k`; cocycles, coboundaries and
//! cohomology are the same for both conventions.

use crate::models::{Cochain, CochainModel, ModelError, Placement};

/// One summand of a brace: insertion positions in the result and the sign
/// `(−1)^{Σ_p (j_p − 1) k_p}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedBraceTerm {
    pub positions: Vec<usize>,
    pub negative: bool,
}

impl SignedBraceTerm {
    pub fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

fn result_degree(outer: usize, inner_degrees: &[usize]) -> Option<usize> {
    let n = outer as isize + inner_degrees.iter().map(|&j| j as isize - 1).sum::<isize>();
    (n >= 0).then_some(n as usize)
}

/// All non-overlapping placements of blocks of the given degrees into an
/// `outer`-cochain, in lexicographic order of positions.
pub fn brace_terms(outer: usize, inner_degrees: &[usize]) -> Vec<SignedBraceTerm> {
    let Some(n) = result_degree(outer, inner_degrees) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut positions = Vec::with_capacity(inner_degrees.len());
    enumerate(n, inner_degrees, 0, &mut positions, &mut out);
    out
}

fn enumerate(
    n: usize,
    degrees: &[usize],
    start: usize,
    positions: &mut Vec<usize>,
    out: &mut Vec<SignedBraceTerm>,
) {
    let p = positions.len();
    if p == degrees.len() {
        let exponent: usize = positions
            .iter()
            .zip(degrees)
            .map(|(&k, &j)| (j + 1) * k)
            .sum();
        out.push(SignedBraceTerm {
            positions: positions.clone(),
            negative: exponent % 2 == 1,
        });
        return;
    }
    // room left for the remaining blocks
    let rest: usize = degrees[p..].iter().sum();
    if start + rest > n {
        return;
    }
    for k in start..=n - rest {
        positions.push(k);
        enumerate(n, degrees, k + degrees[p], positions, out);
        positions.pop();
    }
}

/// The brace `outer{inners}`: signed sum of all substitutions. Returns
/// `None` when the result degree would be negative (an empty sum).
fn brace_opt(
    model: &CochainModel,
    outer: &Cochain,
    inners: &[&Cochain],
) -> Result<Option<Cochain>, ModelError> {
    model.check_owned(outer)?;
    for c in inners {
        model.check_owned(c)?;
    }
    let degrees: Vec<usize> = inners.iter().map(|c| c.degree()).collect();
    let Some(n) = result_degree(outer.degree(), &degrees) else {
        return Ok(None);
    };
    let one = model.field().one();
    let minus_one = -model.field().one();
    let mut acc = model.zero(n);
    for term in brace_terms(outer.degree(), &degrees) {
        let placements: Vec<Placement<'_>> = term
            .positions
            .iter()
            .zip(inners)
            .map(|(&k, c)| Placement::new(k, c))
            .collect();
        let s = model.substitute(outer, &placements)?;
        acc.axpy(if term.negative { &minus_one } else { &one }, &s);
    }
    Ok(Some(acc))
}

/// `outer{inner_1, …, inner_r}`.
pub fn brace(
    model: &CochainModel,
    outer: &Cochain,
    inners: &[&Cochain],
) -> Result<Cochain, ModelError> {
    brace_opt(model, outer, inners)?.ok_or(ModelError::DegreeOverflow)
}

/// `a ⌣ b = (−1)^{ij} μ(a ⊗ b)`.
pub fn cup(model: &CochainModel, a: &Cochain, b: &Cochain) -> Result<Cochain, ModelError> {
    let (i, j) = (a.degree(), b.degree());
    let raw = model.substitute(&model.mu(), &[Placement::new(0, a), Placement::new(i, b)])?;
    Ok(raw.scale(&model.field().one().signed((i * j) as i64)))
}

/// The differential as the alternating sum of `μ`-compositions and
/// `μ`-insertions.
pub fn differential(model: &CochainModel, c: &Cochain) -> Result<Cochain, ModelError> {
    model.check_owned(c)?;
    let k = c.degree();
    let mu = model.mu();
    let one = model.field().one();
    let left = model.substitute(&mu, &[Placement::new(0, c)])?;
    let right = model.substitute(&mu, &[Placement::new(1, c)])?;
    if k == 0 {
        return Ok(&right - &left);
    }
    let mut acc = left;
    acc.axpy(&one.clone().signed(k as i64 - 1), &right);
    for i in 1..=k {
        let s = model.substitute(c, &[Placement::new(i - 1, &mu)])?;
        acc.axpy(&one.clone().signed((i + k - 1) as i64), &s);
    }
    Ok(acc)
}

/// `μ{c} − (−1)^{k−1} c{μ}`. Agrees with [`differential`] for `k ≥ 1`; on
/// 0-cochains it is its negative.
pub fn differential_via_braces(model: &CochainModel, c: &Cochain) -> Result<Cochain, ModelError> {
    let k = c.degree() as i64;
    let mu = model.mu();
    let mut acc = brace(model, &mu, &[c])?;
    if let Some(inner) = brace_opt(model, c, &[&mu])? {
        acc.axpy(&-model.field().one().signed(k - 1), &inner);
    }
    Ok(acc)
}

/// `{a, b} = a{b} − (−1)^{(i+1)(j+1)} b{a}`.
pub fn bracket(model: &CochainModel, a: &Cochain, b: &Cochain) -> Result<Cochain, ModelError> {
    let (i, j) = (a.degree(), b.degree());
    let mut acc = brace(model, a, &[b])?;
    let other = brace(model, b, &[a])?;
    acc.axpy(
        &-model.field().one().signed(((i + 1) * (j + 1)) as i64),
        &other,
    );
    Ok(acc)
}

/// `(a{b_1..b_r}){c_1..c_s}` minus the signed sum over all ways of
/// distributing the `c`'s between the gaps around the `b`'s and the insides
/// of the `b`'s, keeping their order.
pub fn pre_jacobi_defect(
    model: &CochainModel,
    a: &Cochain,
    bs: &[&Cochain],
    cs: &[&Cochain],
) -> Result<Cochain, ModelError> {
    let inner = brace(model, a, bs)?;
    let mut acc = brace(model, &inner, cs)?;
    let r = bs.len();
    let minus_one = -model.field().one();
    let mut locations = vec![0usize; cs.len()];
    loop {
        if let Some((term, negative)) = distributed_term(model, a, bs, cs, &locations)? {
            if term.degree() != acc.degree() {
                return Err(ModelError::DegreeMismatch {
                    expected: acc.degree(),
                    found: term.degree(),
                });
            }
            let sign = if negative {
                model.field().one()
            } else {
                minus_one.clone()
            };
            acc.axpy(&sign, &term);
        }
        if !next_nondecreasing(&mut locations, 2 * r) {
            break;
        }
    }
    Ok(acc)
}

/// One right-hand summand. Location `2p` is the gap before `b_{p+1}` (or
/// after the last `b`), location `2p + 1` is the inside of `b_{p+1}`.
fn distributed_term(
    model: &CochainModel,
    a: &Cochain,
    bs: &[&Cochain],
    cs: &[&Cochain],
    locations: &[usize],
) -> Result<Option<(Cochain, bool)>, ModelError> {
    let mut filled: Vec<Cochain> = Vec::with_capacity(bs.len());
    for (p, b) in bs.iter().enumerate() {
        let inside: Vec<&Cochain> = cs
            .iter()
            .zip(locations)
            .filter(|(_, &l)| l == 2 * p + 1)
            .map(|(c, _)| *c)
            .collect();
        match brace_opt(model, b, &inside)? {
            Some(x) => filled.push(x),
            None => return Ok(None),
        }
    }
    let mut items: Vec<&Cochain> = Vec::new();
    for loc in 0..=2 * bs.len() {
        if loc % 2 == 1 {
            items.push(&filled[loc / 2]);
        } else {
            items.extend(
                cs.iter()
                    .zip(locations)
                    .filter(|(_, &l)| l == loc)
                    .map(|(c, _)| *c),
            );
        }
    }
    let mut exponent = 0;
    for (p, b) in bs.iter().enumerate() {
        let before: usize = cs
            .iter()
            .zip(locations)
            .filter(|(_, &l)| l < 2 * p + 1)
            .map(|(c, _)| c.degree() + 1)
            .sum();
        exponent += (b.degree() + 1) * before;
    }
    Ok(brace_opt(model, a, &items)?.map(|t| (t, exponent % 2 == 1)))
}

fn next_nondecreasing(seq: &mut [usize], max: usize) -> bool {
    for i in (0..seq.len()).rev() {
        if seq[i] < max {
            let v = seq[i] + 1;
            for x in &mut seq[i..] {
                *x = v;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::presets::*;
    use crate::models::{build_algebra_model, build_bialgebra_model};
    use crate::scalar::FieldSpec;
    use crate::tensor::Tensor;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn dual() -> CochainModel {
        build_algebra_model(dual_numbers(Q)).unwrap()
    }

    fn z2() -> CochainModel {
        build_bialgebra_model(group_algebra(Q, &[2])).unwrap()
    }

    #[test]
    fn placements_are_lexicographic() {
        let t = brace_terms(2, &[2]);
        let pos: Vec<_> = t.iter().map(|t| t.positions.clone()).collect();
        assert_eq!(pos, vec![vec![0], vec![1]]);
        assert_eq!(
            t.iter().map(SignedBraceTerm::sign).collect::<Vec<_>>(),
            vec![1, -1]
        );
        let t = brace_terms(3, &[1, 2]);
        let pos: Vec<_> = t.iter().map(|t| t.positions.clone()).collect();
        assert_eq!(pos, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert!(brace_terms(1, &[0, 0]).is_empty());
    }

    #[test]
    fn brace_examples() {
        for m in [dual(), z2()] {
            let mu = m.mu();
            let id = m.identity();
            assert_eq!(brace(&m, &id, &[&mu]).unwrap(), mu);
            assert!(brace(&m, &mu, &[&mu]).unwrap().is_zero());
            let c = m.basis_cochain(1, 1);
            assert_eq!(brace(&m, &c, &[&id]).unwrap(), c);
        }
    }

    #[test]
    fn cup_examples() {
        let m = dual();
        let x = m.basis_cochain(0, 1);
        assert!(cup(&m, &x, &x).unwrap().is_zero());
        let one = m.eta();
        assert_eq!(cup(&m, &one, &x).unwrap(), x);
        let c = m.basis_cochain(2, 3);
        assert_eq!(cup(&m, &m.eta(), &c).unwrap(), c);

        let h = z2();
        let a = h.basis_cochain(1, 1);
        let b = h.basis_cochain(1, 0);
        let ab = cup(&h, &a, &b).unwrap();
        assert_eq!(
            ab.payload(),
            &Tensor::basis(Q, &[2, 2], &[1, 0]).scale(&-Q.one())
        );
    }

    #[test]
    fn differential_examples() {
        let m = dual();
        assert!(differential(&m, &m.basis_cochain(0, 1)).unwrap().is_zero());
        assert!(differential(&m, &m.mu()).unwrap().is_zero());
        assert_eq!(differential(&m, &m.identity()).unwrap(), m.mu());

        let h = z2();
        let g = h.basis_cochain(1, 1);
        let expected = Tensor::from_i64(Q, &[2, 2], &[0, 1, 1, -1]).unwrap();
        assert_eq!(differential(&h, &g).unwrap().payload(), &expected);
        assert!(differential(&h, &h.mu()).unwrap().is_zero());
        assert_eq!(differential(&h, &h.identity()).unwrap(), h.mu());
    }

    #[test]
    fn both_differentials_agree_on_basis_cochains() {
        for m in [dual(), z2()] {
            for k in 0..4 {
                for idx in 0..m.cochain_dim(k) {
                    let c = m.basis_cochain(k, idx);
                    let lit = differential(&m, &c).unwrap();
                    let via = differential_via_braces(&m, &c).unwrap();
                    if k == 0 {
                        assert_eq!(lit, -&via);
                    } else {
                        assert_eq!(lit, via);
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_examples() {
        let m = dual();
        assert!(bracket(&m, &m.mu(), &m.mu()).unwrap().is_zero());
        let c = m.basis_cochain(2, 5);
        let two = Q.from_i64(2);
        assert_eq!(
            bracket(&m, &c, &c).unwrap(),
            brace(&m, &c, &[&c]).unwrap().scale(&two)
        );
        let id = m.identity();
        assert_eq!(bracket(&m, &id, &c).unwrap(), c.scale(&Q.from_i64(-1)));
    }

    #[test]
    fn pre_jacobi_on_structure_maps() {
        for m in [dual(), z2()] {
            let mu = m.mu();
            assert!(pre_jacobi_defect(&m, &mu, &[&mu], &[&mu])
                .unwrap()
                .is_zero());
            let id = m.identity();
            assert!(pre_jacobi_defect(&m, &mu, &[&id, &mu], &[&mu])
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn nondecreasing_sequences() {
        let mut s = vec![0, 0];
        let mut seen = vec![s.clone()];
        while next_nondecreasing(&mut s, 2) {
            seen.push(s.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 2]);
    }
}
