//! The algebras `K_Λ` and `H_Λ` of a finite block.

use crate::basis::BasisDiagram;
use crate::block::Block;
use crate::closure::multiply_via_closure;
use crate::coeff::Coefficient;
use crate::diagram::{cap_diagram_of, components, cup_diagram_of, subset_rel, CapDiagram, ComponentKind};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::surgery::multiply_generalized;
use crate::weight::{Label, Weight};

/// Which algorithm computes products of basis diagrams.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Route {
    /// Surgery directly on the stacked diagrams, with line rules.
    #[default]
    Generalized,
    /// Close, multiply in Khovanov's algebra, drop the ideal, open.
    ViaClosure,
}

/// Weights `α` in `block` with `α ⊂ λ`, in block order.
pub fn weights_below(block: &Block, lambda: &Weight) -> Vec<Weight> {
    block.members().iter().filter(|a| subset_rel(a, lambda).unwrap_or(false)).cloned().collect()
}

/// Weights `μ` in `block` with `λ ⊂ μ`, in block order.
pub fn weights_above(block: &Block, lambda: &Weight) -> Vec<Weight> {
    block.members().iter().filter(|m| subset_rel(lambda, m).unwrap_or(false)).cloned().collect()
}

fn basis_filtered(block: &Block, keep: impl Fn(&Weight) -> bool) -> Vec<BasisDiagram> {
    let mut out = Vec::new();
    for lambda in block.members() {
        let below: Vec<Weight> = weights_below(block, lambda).into_iter().filter(|a| keep(a)).collect();
        for alpha in &below {
            for beta in &below {
                out.push(BasisDiagram::from_weights(alpha, lambda, beta).expect("α ⊂ λ ⊃ β orients"));
            }
        }
    }
    out.sort();
    out
}

/// All oriented circle diagrams `(α̲ λ β̄)` with `α ⊂ λ ⊃ β`, in canonical order.
pub fn basis_k(block: &Block) -> Vec<BasisDiagram> {
    basis_filtered(block, |_| true)
}

/// The part of [`basis_k`] with `α, β` of maximal defect.
pub fn basis_h(block: &Block) -> Vec<BasisDiagram> {
    let top = block.defect();
    basis_filtered(block, |a| a.defect() == top)
}

/// Defect of the block containing `weight`.
pub fn block_defect(weight: &Weight) -> usize {
    weight.count_down().min(weight.count_up())
}

/// Whether `x` lies in `H_Λ`: both its cup and cap weights have maximal defect.
pub fn in_h(x: &BasisDiagram) -> bool {
    let top = block_defect(x.weight());
    x.cup().arc_count() == top && x.cap().arc_count() == top
}

pub fn multiply_basis<C: Coefficient>(x: &BasisDiagram, y: &BasisDiagram, route: Route) -> Result<Element<C>> {
    match route {
        Route::Generalized => multiply_generalized(x, y),
        Route::ViaClosure => multiply_via_closure(x, y),
    }
}

/// Bilinear product.
pub fn multiply<C: Coefficient>(x: &Element<C>, y: &Element<C>) -> Result<Element<C>> {
    multiply_with(x, y, Route::Generalized)
}

pub fn multiply_with<C: Coefficient>(x: &Element<C>, y: &Element<C>, route: Route) -> Result<Element<C>> {
    if let (Some(a), Some(b)) = (x.representative(), y.representative()) {
        if !a.weight().same_block(b.weight()) {
            return Err(Error::BlockMismatch(a.weight().to_string(), b.weight().to_string()));
        }
    }
    let mut out = Element::zero();
    for (a, s) in x.terms() {
        for (b, t) in y.terms() {
            if a.cap().mirror() != *b.cup() {
                continue;
            }
            let st = s.checked_mul(t).ok_or(Error::Overflow)?;
            out = out.checked_add(&multiply_basis::<C>(a, b, route)?.checked_scale(&st)?)?;
        }
    }
    Ok(out)
}

/// `e_λ`.
pub fn idempotent(lambda: &Weight) -> BasisDiagram {
    BasisDiagram::idempotent(lambda)
}

/// `Σ_λ e_λ`.
pub fn identity<C: Coefficient>(block: &Block) -> Element<C> {
    Element::from_terms(block.members().iter().map(|l| (idempotent(l), C::one()))).expect("one block")
}

/// `(aλb) ↦ (b*λa*)`, extended linearly.
pub fn star<C: Coefficient>(x: &Element<C>) -> Element<C> {
    x.map_basis(BasisDiagram::star).expect("star stays in the block")
}

/// `(aλb) ↦ (b↶ λ↶ a↶)`, extended linearly; lands in the rotated block.
pub fn rotate<C: Coefficient>(x: &Element<C>) -> Element<C> {
    x.map_basis(BasisDiagram::rotated).expect("rotation stays in one block")
}

/// `s_{aλb}(μ)`: the coefficient of `(aμd)` in `(aλb)(b*μd)`, computed with
/// `d = μ̄`. Zero if `aμ` is not oriented.
pub fn structure_constant<C: Coefficient>(x: &BasisDiagram, mu: &Weight) -> Result<C> {
    structure_constant_with(x, mu, &cap_diagram_of(mu))
}

/// As [`structure_constant`] with an explicit cap diagram `d` oriented by `μ`.
pub fn structure_constant_with<C: Coefficient>(x: &BasisDiagram, mu: &Weight, d: &CapDiagram) -> Result<C> {
    if !mu.same_block(x.weight()) {
        return Err(Error::BlockMismatch(x.weight().to_string(), mu.to_string()));
    }
    if !x.cup().is_oriented(mu) {
        return Ok(C::zero());
    }
    let b_star = x.cap().mirror();
    if !b_star.is_oriented(mu) {
        return Err(Error::Precondition(format!("{b_star} is not oriented by {mu}")));
    }
    let y = BasisDiagram::new(b_star, mu.clone(), d.clone())?;
    let target = BasisDiagram::new(x.cup().clone(), mu.clone(), d.clone())?;
    Ok(multiply_generalized::<C>(x, &y)?.coefficient(&target))
}

/// `Γ ≺ Λ` realised by padding every weight of `Γ` with fixed labels on the
/// left and right. The padding contains no ∨ to the left of an ∧.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    left: Weight,
    right: Weight,
}

impl Extension {
    pub fn new(left: Weight, right: Weight) -> Result<Self> {
        let mut seen_down = false;
        for &l in left.labels().iter().chain(right.labels()) {
            match l {
                Label::Down => seen_down = true,
                Label::Up if seen_down => {
                    return Err(Error::Precondition(format!("padding {left}…{right} has ∨ left of ∧")));
                }
                _ => {}
            }
        }
        Ok(Extension { left, right })
    }

    /// The extension from `gamma` into `lambda`, trying offsets from the left.
    pub fn find(gamma: &Block, lambda: &Block) -> Result<Self> {
        let (m, n) = (gamma.vertex_count(), lambda.vertex_count());
        let g = &gamma.members()[0];
        let l = &lambda.members()[0];
        let downs = lambda.count_down().checked_sub(gamma.count_down());
        let ups = lambda.count_up().checked_sub(gamma.count_up());
        if let (Some(downs), Some(ups), true) = (downs, ups, m <= n) {
            for offset in 0..=n - m {
                let shared_ok = (0..m).all(|i| {
                    let (a, b) = (g.label(i), l.label(offset + i));
                    a.is_oriented() == b.is_oriented() && (a.is_oriented() || a == b)
                });
                let new: Vec<usize> = (0..offset).chain(offset + m..n).collect();
                let oriented = new.iter().filter(|&&i| l.label(i).is_oriented()).count();
                if !shared_ok || oriented != downs + ups {
                    continue;
                }
                let mut labels = l.labels().to_vec();
                let mut placed = 0;
                for &i in &new {
                    if labels[i].is_oriented() {
                        labels[i] = if placed < ups { Label::Up } else { Label::Down };
                        placed += 1;
                    }
                }
                let left = Weight::new(labels[..offset].to_vec());
                let right = Weight::new(labels[offset + m..].to_vec());
                return Extension::new(left, right);
            }
        }
        Err(Error::Precondition(format!("no extension from the block of {g} to the block of {l}")))
    }

    pub fn offset(&self) -> usize {
        self.left.len()
    }

    /// Whether `ex` respects products: no new ∨ on the left and no new ∧ on
    /// the right. A new ∨ on the left (or ∧ on the right) becomes a closure
    /// vertex of the copy of `Γ`, so terms that vanish in `K_Γ` can survive.
    pub fn is_multiplicative(&self) -> bool {
        !self.left.labels().contains(&Label::Down) && !self.right.labels().contains(&Label::Up)
    }

    /// `ex(λ)`.
    pub fn weight(&self, lambda: &Weight) -> Weight {
        self.left.labels().iter().chain(lambda.labels()).chain(self.right.labels()).copied().collect()
    }

    /// `ex(aλb) = (ex(α)̲ ex(λ) ex(β)̄)`.
    pub fn diagram(&self, x: &BasisDiagram) -> Result<BasisDiagram> {
        let alpha = self.weight(&x.cup_weight());
        let beta = self.weight(&x.cap_weight());
        BasisDiagram::new(cup_diagram_of(&alpha), self.weight(x.weight()), cap_diagram_of(&beta))
    }

    pub fn apply<C: Coefficient>(&self, x: &Element<C>) -> Result<Element<C>> {
        let mut out = Element::zero();
        for (b, c) in x.terms() {
            out.add_term(self.diagram(b)?, c.clone())?;
        }
        Ok(out)
    }
}

/// Extends `x` from `gamma` to `lambda` along [`Extension::find`].
pub fn extend<C: Coefficient>(gamma: &Block, lambda: &Block, x: &Element<C>) -> Result<Element<C>> {
    for b in x.basis() {
        gamma.require(b.weight())?;
    }
    Extension::find(gamma, lambda)?.apply(x)
}

/// `x^#`: the diagram `b*λ'a*` where `λ'` reverses every circle of `aλb`.
pub fn hash_involution(x: &BasisDiagram) -> Result<BasisDiagram> {
    if !in_h(x) {
        return Err(Error::Precondition(format!("{x} is not in the maximal defect subalgebra")));
    }
    let mut labels = x.weight().labels().to_vec();
    for c in components(x.cup(), x.cap())? {
        if c.kind == ComponentKind::Circle {
            for v in c.vertices {
                labels[v] = labels[v].flipped();
            }
        }
    }
    BasisDiagram::new(x.cap().mirror(), Weight::new(labels), x.cup().mirror())
}

/// The symmetrising form: sum of the coefficients in degree `2·defect(Λ)`.
pub fn tau<C: Coefficient>(x: &Element<C>) -> Result<C> {
    let mut out = C::zero();
    for (b, c) in x.terms() {
        if !in_h(b) {
            return Err(Error::Precondition(format!("τ is defined on the maximal defect subalgebra only; {b} is outside")));
        }
        if b.degree() == 2 * block_defect(b.weight()) {
            out = out.checked_add(c).ok_or(Error::Overflow)?;
        }
    }
    Ok(out)
}

/// `Σ q^{deg x}` over a list of basis diagrams.
pub fn graded_dimension<C: Coefficient>(basis: &[BasisDiagram]) -> LaurentPoly<C> {
    let mut p = LaurentPoly::zero();
    for x in basis {
        p.add_monomial(x.degree() as i32, C::one()).expect("dimension fits");
    }
    p
}
