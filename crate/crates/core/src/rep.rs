//! Graded representation data of a block: decomposition and Cartan matrices,
//! cell modules, standard filtrations of projectives, and truncation to the
//! maximal defect subalgebra.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{basis_k, structure_constant, weights_above, weights_below};
use crate::basis::BasisDiagram;
use crate::block::Block;
use crate::coeff::Coefficient;
use crate::diagram::{cap_diagram_of, cup_diagram_of, subset_rel, CupDiagram};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, PolyMatrix};
use crate::weight::Weight;

/// `d_{λμ} = q^{deg(λ̲μ)}` if `λ ⊂ μ`, else 0.
pub fn decomposition_entry<C: Coefficient>(lambda: &Weight, mu: &Weight) -> Result<LaurentPoly<C>> {
    Ok(if subset_rel(lambda, mu)? {
        LaurentPoly::q_pow(cup_diagram_of(lambda).degree(mu) as i32)
    } else {
        LaurentPoly::zero()
    })
}

pub fn decomposition_matrix<C: Coefficient>(block: &Block) -> Result<PolyMatrix<C>> {
    let m = block.members();
    PolyMatrix::from_fn(m.to_vec(), |i, j| decomposition_entry(&m[i], &m[j]))
}

/// `c_{λμ} = Σ_{λ⊂ν⊃μ} q^{deg(λ̲ν) + deg(νμ̄)}`.
pub fn cartan_matrix<C: Coefficient>(block: &Block) -> Result<PolyMatrix<C>> {
    let m = block.members();
    PolyMatrix::from_fn(m.to_vec(), |i, j| {
        let (lambda, mu) = (&m[i], &m[j]);
        let mut p = LaurentPoly::zero();
        for nu in m {
            if subset_rel(lambda, nu)? && subset_rel(mu, nu)? {
                let k = cup_diagram_of(lambda).degree(nu) + cap_diagram_of(mu).degree(nu);
                p.add_monomial(k as i32, C::one())?;
            }
        }
        Ok(p)
    })
}

/// A vector of a cell module: coefficients on cup diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CellVector<C: Coefficient> {
    terms: BTreeMap<CupDiagram, C>,
}

impl<C: Coefficient> CellVector<C> {
    pub fn zero() -> Self {
        CellVector { terms: BTreeMap::new() }
    }

    pub fn basis(c: CupDiagram) -> Self {
        let mut v = Self::zero();
        v.terms.insert(c, C::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CupDiagram, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, c: &CupDiagram) -> C {
        self.terms.get(c).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, c: CupDiagram, k: C) -> Result<()> {
        if k.is_zero() {
            return Ok(());
        }
        let sum = self.coefficient(&c).checked_add(&k).ok_or(Error::Overflow)?;
        if sum.is_zero() {
            self.terms.remove(&c);
        } else {
            self.terms.insert(c, sum);
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Display for CellVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, k)| format!("+{k}·({c}|")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The cell module `V(μ)` with basis `(λ̲μ|` for `λ ⊂ μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellModule {
    mu: Weight,
    /// `(λ, deg(λ̲μ))` in block order.
    basis: Vec<(Weight, usize)>,
}

impl CellModule {
    pub fn new(block: &Block, mu: &Weight) -> Result<Self> {
        block.require(mu)?;
        let basis = weights_below(block, mu)
            .into_iter()
            .map(|l| {
                let d = cup_diagram_of(&l).degree(mu);
                (l, d)
            })
            .collect();
        Ok(CellModule { mu: mu.clone(), basis })
    }

    pub fn mu(&self) -> &Weight {
        &self.mu
    }

    /// `(λ, degree)` pairs; the basis vector is `(λ̲μ|`.
    pub fn basis(&self) -> &[(Weight, usize)] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn graded_dimension<C: Coefficient>(&self) -> LaurentPoly<C> {
        let mut p = LaurentPoly::zero();
        for (_, d) in &self.basis {
            p.add_monomial(*d as i32, C::one()).expect("dimension fits");
        }
        p
    }

    /// Layer `j` lists the `λ ⊂ μ` with `deg(λ̲μ) = j`.
    pub fn layers(&self) -> Vec<Vec<Weight>> {
        let top = self.basis.iter().map(|(_, d)| *d).max().unwrap_or(0);
        let mut out = vec![Vec::new(); if self.basis.is_empty() { 0 } else { top + 1 }];
        for (l, d) in &self.basis {
            out[*d].push(l.clone());
        }
        out
    }

    pub fn vector<C: Coefficient>(&self, lambda: &Weight) -> Result<CellVector<C>> {
        if !self.basis.iter().any(|(l, _)| l == lambda) {
            return Err(Error::Precondition(format!("{lambda} is not below {}", self.mu)));
        }
        Ok(CellVector::basis(cup_diagram_of(lambda)))
    }

    /// `(aλb)·(cμ| = s_{aλb}(μ)·(aμ|` if `b* = c` and `aμ` is oriented, else 0.
    pub fn act_basis<C: Coefficient>(&self, x: &BasisDiagram, c: &CupDiagram) -> Result<CellVector<C>> {
        if !x.weight().same_block(&self.mu) {
            return Err(Error::BlockMismatch(x.weight().to_string(), self.mu.to_string()));
        }
        let mut out = CellVector::zero();
        if x.cap().mirror() != *c || !x.cup().is_oriented(&self.mu) {
            return Ok(out);
        }
        out.add_term(x.cup().clone(), structure_constant(x, &self.mu)?)?;
        Ok(out)
    }

    pub fn act<C: Coefficient>(&self, x: &Element<C>, v: &CellVector<C>) -> Result<CellVector<C>> {
        let mut out = CellVector::zero();
        for (b, s) in x.terms() {
            for (c, t) in v.terms() {
                for (d, u) in self.act_basis::<C>(b, c)?.terms() {
                    let k = s.checked_mul(t).and_then(|st| st.checked_mul(u)).ok_or(Error::Overflow)?;
                    out.add_term(d.clone(), k)?;
                }
            }
        }
        Ok(out)
    }
}

/// One section `V(μ)⟨shift⟩` of a standard filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub mu: Weight,
    pub shift: usize,
}

/// Sections of `P(λ)`: the `μ ⊃ λ`, bigger weights first (descending block
/// order, which refines the reversed Bruhat order), with shift `deg(μλ̄)`.
/// The last section is `V(λ)⟨0⟩`.
pub fn projective_filtration(block: &Block, lambda: &Weight) -> Result<Vec<Section>> {
    block.require(lambda)?;
    let cap = cap_diagram_of(lambda);
    let mut above = weights_above(block, lambda);
    above.reverse();
    Ok(above.into_iter().map(|mu| Section { shift: cap.degree(&mu), mu }).collect())
}

/// `dim_q P(λ) = dim_q K e_λ`, counted from the basis.
pub fn projective_graded_dimension<C: Coefficient>(block: &Block, lambda: &Weight) -> Result<LaurentPoly<C>> {
    block.require(lambda)?;
    let cap = cap_diagram_of(lambda);
    let mut p = LaurentPoly::zero();
    for x in basis_k(block).iter().filter(|x| *x.cap() == cap) {
        p.add_monomial(x.degree() as i32, C::one())?;
    }
    Ok(p)
}

/// `Σ_i q^{shift_i} dim_q V(μ_i)` over a filtration.
pub fn filtration_graded_dimension<C: Coefficient>(block: &Block, sections: &[Section]) -> Result<LaurentPoly<C>> {
    let mut p = LaurentPoly::zero();
    for s in sections {
        let v = CellModule::new(block, &s.mu)?.graded_dimension::<C>();
        p = p.checked_add(&LaurentPoly::q_pow(s.shift as i32).checked_mul(&v)?)?;
    }
    Ok(p)
}

/// Graded dimensions after applying the truncation to the maximal defect
/// subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation<C: Coefficient> {
    /// `dim_q eV(μ)` per weight, block order.
    pub cell: Vec<(Weight, LaurentPoly<C>)>,
    /// `dim_q eP(λ)` per weight, block order.
    pub projective: Vec<(Weight, LaurentPoly<C>)>,
    /// `dim eL(λ)` per weight: 1 on maximal defect weights, else 0.
    pub simple: Vec<(Weight, usize)>,
}

pub fn truncate_to_h<C: Coefficient>(block: &Block) -> Result<Truncation<C>> {
    let top = block.defect();
    let maximal = |w: &Weight| w.defect() == top;
    let mut cell = Vec::new();
    let mut projective = Vec::new();
    let mut simple = Vec::new();
    let basis = basis_k(block);
    for w in block.members() {
        let module = CellModule::new(block, w)?;
        let mut p = LaurentPoly::zero();
        for (l, d) in module.basis() {
            if maximal(l) {
                p.add_monomial(*d as i32, C::one())?;
            }
        }
        cell.push((w.clone(), p));

        let cap = cap_diagram_of(w);
        let mut p = LaurentPoly::zero();
        for x in basis.iter().filter(|x| *x.cap() == cap && maximal(&x.cup_weight())) {
            p.add_monomial(x.degree() as i32, C::one())?;
        }
        projective.push((w.clone(), p));
        simple.push((w.clone(), usize::from(maximal(w))));
    }
    Ok(Truncation { cell, projective, simple })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{idempotent, multiply};

    type P = LaurentPoly<i64>;

    fn w(s: &str) -> Weight {
        Weight::parse(s).unwrap()
    }

    fn b(s: &str) -> Block {
        Block::parse(s).unwrap()
    }

    fn text(m: &PolyMatrix<i64>) -> Vec<Vec<String>> {
        m.rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect()
    }

    #[test]
    fn two_vertex_matrices() {
        let block = b("v^");
        assert_eq!(text(&decomposition_matrix(&block).unwrap()), [["1", "q"], ["0", "1"]]);
        assert_eq!(text(&cartan_matrix(&block).unwrap()), [["1+q^2", "q"], ["q", "1"]]);
    }

    #[test]
    fn four_vertex_decomposition_matrix() {
        let d = decomposition_matrix::<i64>(&b("vv^^")).unwrap();
        assert!(d.is_upper_unitriangular());
        assert_eq!(d.entry(&w("vv^^"), &w("^v^v")).unwrap().to_string(), "q");
        assert_eq!(d.entry(&w("vv^^"), &w("^^vv")).unwrap().to_string(), "q^2");
        assert_eq!(d.entry(&w("v^v^"), &w("^vv^")).unwrap().to_string(), "q");
        let c = cartan_matrix::<i64>(&b("vv^^")).unwrap();
        assert_eq!(c, d.checked_mul(&d.transpose()).unwrap());
    }

    #[test]
    fn cell_modules_of_two_vertices() {
        let block = b("^v");
        let v = CellModule::new(&block, &w("v^")).unwrap();
        assert_eq!(v.dim(), 1);
        let v = CellModule::new(&block, &w("^v")).unwrap();
        assert_eq!(v.dim(), 2);
        assert_eq!(v.graded_dimension::<i64>().to_string(), "1+q");
        assert_eq!(v.layers(), vec![vec![w("^v")], vec![w("v^")]]);
        let e = Element::<i64>::from_basis(idempotent(&w("v^")));
        let top = v.vector::<i64>(&w("v^")).unwrap();
        assert_eq!(v.act(&e, &top).unwrap(), top);
        assert!(CellModule::new(&block, &w("vv")).is_err());
    }

    #[test]
    fn cell_action_is_a_module_action() {
        for s in ["^v", "vv^^"] {
            let block = b(s);
            let basis = basis_k(&block);
            for mu in block.members() {
                let module = CellModule::new(&block, mu).unwrap();
                for (l, _) in module.basis() {
                    let v = module.vector::<i64>(l).unwrap();
                    for x in &basis {
                        let x = Element::from_basis(x.clone());
                        let xv = module.act(&x, &v).unwrap();
                        for y in &basis {
                            let y = Element::from_basis(y.clone());
                            let lhs = module.act(&multiply(&y, &x).unwrap(), &v).unwrap();
                            assert_eq!(lhs, module.act(&y, &xv).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projective_of_two_vertices() {
        let block = b("^v");
        let f = projective_filtration(&block, &w("v^")).unwrap();
        assert_eq!(f, vec![Section { mu: w("^v"), shift: 1 }, Section { mu: w("v^"), shift: 0 }]);
        let dim: P = projective_graded_dimension(&block, &w("v^")).unwrap();
        assert_eq!(dim.to_string(), "1+q+q^2");
        assert_eq!(filtration_graded_dimension::<i64>(&block, &f).unwrap(), dim);
        let top = projective_filtration(&block, &w("^v")).unwrap();
        assert_eq!(top, vec![Section { mu: w("^v"), shift: 0 }]);
    }

    #[test]
    fn truncation_of_two_vertices() {
        let t = truncate_to_h::<i64>(&b("^v")).unwrap();
        assert_eq!(t.simple, vec![(w("v^"), 1), (w("^v"), 0)]);
        assert_eq!(t.cell[1].1.to_string(), "q");
        assert_eq!(t.projective[0].1.to_string(), "1+q^2");
    }
}
