//! Closing diagrams of an arbitrary finite block into closed diagrams, and
//! the product of the quotient of Khovanov's algebra that this realises.

use crate::basis::BasisDiagram;
use crate::coeff::Coefficient;
use crate::diagram::{cap_diagram_of, cup_diagram_of, ArcDiagram, End, Polarity};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::surgery::multiply_closed;
use crate::weight::{Label, Weight};

/// Closure data of a block: `p` new ∨'s on the left, `q` new ∧'s on the
/// right, where `p` and `q` are the numbers of ∧'s and ∨'s in the block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Closure {
    pub p: usize,
    pub q: usize,
}

impl Closure {
    pub fn of(weight: &Weight) -> Closure {
        Closure { p: weight.count_up(), q: weight.count_down() }
    }

    /// `cl(λ)`.
    pub fn weight(&self, lambda: &Weight) -> Weight {
        std::iter::repeat_n(Label::Down, self.p)
            .chain(lambda.labels().iter().copied())
            .chain(std::iter::repeat_n(Label::Up, self.q))
            .collect()
    }

    /// Whether a weight of the closed block lies in `cl(Λ)`.
    pub fn in_image(&self, weight: &Weight) -> bool {
        let n = weight.len();
        n >= self.p + self.q
            && weight.labels()[..self.p].iter().all(|&l| l == Label::Down)
            && weight.labels()[n - self.q..].iter().all(|&l| l == Label::Up)
    }

    /// `cl(aλb) = cl(a) cl(λ) cl(b)`.
    pub fn close(&self, x: &BasisDiagram) -> Result<BasisDiagram> {
        if Closure::of(x.weight()) != *self {
            return Err(Error::BlockMismatch(x.weight().to_string(), format!("closure {self:?}")));
        }
        let alpha = self.weight(&x.cup_weight());
        let beta = self.weight(&x.cap_weight());
        BasisDiagram::new(cup_diagram_of(&alpha), self.weight(x.weight()), cap_diagram_of(&beta))
    }

    /// Inverse of [`Closure::close`]: deletes the outer `p + q` vertices.
    pub fn open(&self, z: &BasisDiagram) -> Result<BasisDiagram> {
        if !z.is_closed() {
            return Err(Error::Precondition(format!("{z} is not closed")));
        }
        if !self.in_image(z.weight()) {
            return Err(Error::Precondition(format!("{z} lies in the ideal: weight outside the closed image")));
        }
        let inner = self.p..z.len() - self.q;
        let weight = Weight::new(z.weight().labels()[inner.clone()].to_vec());
        BasisDiagram::new(self.open_half(z.cup(), inner.clone())?, weight, self.open_half(z.cap(), inner)?)
    }

    fn open_half<P: Polarity>(&self, d: &ArcDiagram<P>, inner: std::ops::Range<usize>) -> Result<ArcDiagram<P>> {
        let ends = inner
            .clone()
            .map(|i| match d.end(i) {
                End::Arc(j) if inner.contains(&j) => End::Arc(j - self.p),
                End::Arc(_) => End::Ray,
                other => other,
            })
            .collect();
        ArcDiagram::from_ends(ends)
    }
}

/// `xy` computed in Khovanov's algebra of the closed block, dropping terms of
/// the ideal and opening the rest.
pub fn multiply_via_closure<C: Coefficient>(x: &BasisDiagram, y: &BasisDiagram) -> Result<Element<C>> {
    if !x.weight().same_block(y.weight()) {
        return Err(Error::BlockMismatch(x.weight().to_string(), y.weight().to_string()));
    }
    let cl = Closure::of(x.weight());
    let product: Element<C> = multiply_closed(&cl.close(x)?, &cl.close(y)?)?;
    let mut out = Element::zero();
    for (z, c) in product.terms() {
        if cl.in_image(z.weight()) {
            out.add_term(cl.open(z)?, c.clone())?;
        }
    }
    Ok(out)
}
