//! Property suites checking the algebra against its defining identities.
//!
//! Each suite walks blocks from the smallest upward, so the first failure
//! recorded is a smallest counterexample.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    basis_h, basis_k, hash_involution, in_h, multiply, multiply_basis, rotate, star, structure_constant,
    structure_constant_with, tau, weights_above, weights_below, Extension, Route,
};
use crate::basis::BasisDiagram;
use crate::block::{all_blocks, khovanov_block, Block};
use crate::diagram::{cap_diagram_of, subset_rel, CapDiagram};
use crate::element::Element;
use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::rep::{
    cartan_matrix, decomposition_matrix, filtration_graded_dimension, projective_filtration,
    projective_graded_dimension, CellModule,
};
use crate::surgery::{admissible_orders, multiply_in_order, multiply_traced};
use crate::weight::{Label, Weight};

type E = Element<i64>;
type P = LaurentPoly<i64>;

const MAX_REPORTED: usize = 10;

/// Outcome of one suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checked: usize,
    pub failures: Vec<String>,
    /// Failures beyond the ones kept in `failures`.
    pub suppressed: usize,
}

impl Report {
    fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(describe());
            } else {
                self.suppressed += 1;
            }
        }
    }

    fn check_result<T>(&mut self, r: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", context()));
                None
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} checks)", self.suite, self.checked)?;
        for c in &self.failures {
            write!(f, "\n  counterexample: {c}")?;
        }
        if self.suppressed > 0 {
            write!(f, "\n  … and {} more", self.suppressed)?;
        }
        Ok(())
    }
}

/// Knobs shared by the suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub max_vertices: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_vertices: 5, samples: 10_000, seed: 0 }
    }
}

pub const SUITES: [&str; 7] = ["grading", "assoc", "oracle", "triangular", "cellularity", "symmetric", "counts"];

/// Runs a suite by name; `all` runs every suite.
pub fn run(name: &str, opts: &Options) -> Option<Vec<Report>> {
    let one = |n: &str| -> Option<Report> {
        Some(match n {
            "grading" => grading(opts.max_vertices),
            "assoc" => associativity(opts),
            "oracle" => oracle(opts.max_vertices),
            "triangular" => triangular(opts.max_vertices),
            "cellularity" => cellularity(opts.max_vertices),
            "symmetric" => symmetric(opts.max_vertices),
            "counts" => counts(opts.max_vertices),
            _ => return None,
        })
    };
    if name == "all" {
        SUITES.iter().map(|s| one(s)).collect()
    } else {
        one(name).map(|r| vec![r])
    }
}

/// Every block on at most `max_vertices` vertices, smallest first.
pub fn blocks_up_to(max_vertices: usize) -> Vec<Block> {
    (0..=max_vertices).flat_map(all_blocks).collect()
}

/// Pairs `(x, y)` of basis diagrams with `cap(x)* = cup(y)`.
pub fn composable_pairs(basis: &[BasisDiagram]) -> Vec<(&BasisDiagram, &BasisDiagram)> {
    let mut by_cup: BTreeMap<String, Vec<&BasisDiagram>> = BTreeMap::new();
    for y in basis {
        by_cup.entry(y.cup().to_string()).or_default().push(y);
    }
    let mut out = Vec::new();
    for x in basis {
        if let Some(ys) = by_cup.get(&x.cap().mirror().to_string()) {
            out.extend(ys.iter().map(|y| (x, *y)));
        }
    }
    out
}

fn pair_text(x: &BasisDiagram, y: &BasisDiagram) -> String {
    format!("({x})·({y})")
}

/// Degrees add; star and rotation reverse products.
pub fn grading(max_vertices: usize) -> Report {
    let mut r = Report::new("grading");
    for block in blocks_up_to(max_vertices) {
        let basis = basis_k(&block);
        for (x, y) in composable_pairs(&basis) {
            let Some(xy) = r.check_result(multiply_basis::<i64>(x, y, Route::Generalized), || pair_text(x, y)) else {
                continue;
            };
            for z in xy.basis() {
                r.check(z.degree() == x.degree() + y.degree(), || {
                    format!("{} has term {z} of degree {}", pair_text(x, y), z.degree())
                });
            }
            let (ex, ey) = (E::from_basis(x.clone()), E::from_basis(y.clone()));
            let starred = multiply(&star(&ey), &star(&ex));
            r.check(starred.as_ref().ok() == Some(&star(&xy)), || format!("star reverses {}", pair_text(x, y)));
            let rotated = multiply(&rotate(&ey), &rotate(&ex));
            r.check(rotated.as_ref().ok() == Some(&rotate(&xy)), || format!("rotation reverses {}", pair_text(x, y)));
        }
    }
    r
}

/// `λ ≤ ν ≥ μ` for every term `(aνd)`, the leading coefficient when `b = λ̄`, and all
/// coefficients are non-negative.
pub fn triangular(max_vertices: usize) -> Report {
    let mut r = Report::new("triangular");
    for block in blocks_up_to(max_vertices) {
        let basis = basis_k(&block);
        for (x, y) in composable_pairs(&basis) {
            let Some(xy) = r.check_result(multiply_basis::<i64>(x, y, Route::Generalized), || pair_text(x, y)) else {
                continue;
            };
            let (lambda, mu) = (x.weight(), y.weight());
            for (z, c) in xy.terms() {
                let nu = z.weight();
                let ok = z.cup() == x.cup()
                    && z.cap() == y.cap()
                    && lambda.bruhat_leq(nu).unwrap_or(false)
                    && mu.bruhat_leq(nu).unwrap_or(false);
                r.check(ok, || format!("{} has term {z} outside λ ≤ ν ≥ μ", pair_text(x, y)));
                r.check(*c > 0, || format!("{} has coefficient {c} on {z}", pair_text(x, y)));
            }
            // With b = λ̄ and aμ oriented the leading coefficient is 1 exactly
            // when the grading allows it, which always holds for λ = μ.
            if *x.cap() == cap_diagram_of(lambda) && x.cup().is_oriented(mu) {
                let fits = x.cup().degree(lambda) + y.cup().degree(mu) == x.cup().degree(mu);
                let lead = BasisDiagram::new(x.cup().clone(), mu.clone(), y.cap().clone());
                let ok = lead.map(|l| xy.coefficient(&l) == i64::from(fits)).unwrap_or(false);
                r.check(ok, || format!("{} has the wrong leading coefficient", pair_text(x, y)));
                r.check(lambda != mu || fits, || format!("{} has λ = μ but no degree room", pair_text(x, y)));
            }
        }
    }
    r
}

/// Direct surgery against closure, surgery order independence, and the
/// extension maps: homomorphisms when multiplicative, graded embeddings always.
pub fn oracle(max_vertices: usize) -> Report {
    let mut r = Report::new("oracle");
    for block in blocks_up_to(max_vertices) {
        let basis = basis_k(&block);
        for (x, y) in composable_pairs(&basis) {
            let direct = multiply_basis::<i64>(x, y, Route::Generalized);
            let closed = multiply_basis::<i64>(x, y, Route::ViaClosure);
            r.check(matches!((&direct, &closed), (Ok(a), Ok(b)) if a == b), || {
                format!("{}: direct {:?} vs closure {:?}", pair_text(x, y), show(&direct), show(&closed))
            });
            for order in admissible_orders(x.cap()) {
                let other = multiply_in_order::<i64>(x, y, &order);
                r.check(other.as_ref().ok() == direct.as_ref().ok(), || {
                    format!("{} depends on the surgery order {order:?}", pair_text(x, y))
                });
            }
        }
    }
    for (left, right) in short_paddings() {
        let Ok(ex) = Extension::new(left, right) else { continue };
        let pad = ex.weight(&Weight::default()).len();
        for block in blocks_up_to(max_vertices.saturating_sub(pad)) {
            let basis = basis_k(&block);
            if ex.is_multiplicative() {
                for (x, y) in composable_pairs(&basis) {
                    let lhs = multiply_basis::<i64>(x, y, Route::Generalized).and_then(|p| ex.apply(&p));
                    let rhs = ex.diagram(x).and_then(|a| {
                        ex.diagram(y).and_then(|b| multiply_basis::<i64>(&a, &b, Route::Generalized))
                    });
                    r.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || {
                        format!("extension by {ex:?} is not multiplicative on {}", pair_text(x, y))
                    });
                }
            }
            let mut images = BTreeSet::new();
            for x in &basis {
                match ex.diagram(x) {
                    Ok(y) => {
                        r.check(y.degree() == x.degree(), || format!("extension by {ex:?} changes the degree of {x}"));
                        r.check(images.insert(y), || format!("extension by {ex:?} is not injective at {x}"));
                    }
                    Err(e) => r.check(false, || format!("extension by {ex:?} of {x}: {e}")),
                }
            }
            for lambda in block.members() {
                let e = BasisDiagram::idempotent(lambda);
                let ok = ex.diagram(&e).ok() == Some(BasisDiagram::idempotent(&ex.weight(lambda)));
                r.check(ok, || format!("extension by {ex:?} does not send e_{lambda} to an idempotent"));
            }
        }
    }
    r
}

/// Paddings with at most two new vertices in total.
fn short_paddings() -> Vec<(Weight, Weight)> {
    let mut words = vec![vec![]];
    for l in Label::ALL {
        words.push(vec![l]);
        for m in Label::ALL {
            words.push(vec![l, m]);
        }
    }
    let mut out = Vec::new();
    for left in &words {
        for right in &words {
            if left.len() + right.len() <= 2 {
                out.push((Weight::new(left.clone()), Weight::new(right.clone())));
            }
        }
    }
    out
}

fn show(e: &Result<E>) -> String {
    match e {
        Ok(e) => e.to_string(),
        Err(err) => format!("error: {err}"),
    }
}

/// Exhaustive associativity on two small algebras and seeded random
/// composable triples on larger ones.
pub fn associativity(opts: &Options) -> Report {
    let mut r = Report::new("assoc");
    let k11 = basis_k(&Block::parse("^v").expect("block"));
    let h2 = basis_h(&Block::parse("vv^^").expect("block"));
    for basis in [&k11, &h2] {
        for x in basis.iter() {
            for y in basis.iter() {
                for z in basis.iter() {
                    check_triple(&mut r, x, y, z);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for w in ["vv^^", "vvv^^^"] {
        let basis = basis_k(&Block::parse(w).expect("block"));
        let mut by_cup: BTreeMap<String, Vec<&BasisDiagram>> = BTreeMap::new();
        for y in &basis {
            by_cup.entry(y.cup().to_string()).or_default().push(y);
        }
        let next = |x: &BasisDiagram, rng: &mut ChaCha8Rng| -> BasisDiagram {
            (*by_cup[&x.cap().mirror().to_string()].choose(rng).expect("e_β is always composable")).clone()
        };
        for _ in 0..opts.samples {
            let x = basis.choose(&mut rng).expect("non-empty basis").clone();
            let y = next(&x, &mut rng);
            let z = next(&y, &mut rng);
            check_triple(&mut r, &x, &y, &z);
            let w = basis.choose(&mut rng).expect("non-empty basis").clone();
            check_bilinear(&mut r, &x, &w, &z);
        }
    }
    r
}

fn check_triple(r: &mut Report, x: &BasisDiagram, y: &BasisDiagram, z: &BasisDiagram) {
    let (ex, ey, ez) = (E::from_basis(x.clone()), E::from_basis(y.clone()), E::from_basis(z.clone()));
    let lhs = multiply(&ex, &ey).and_then(|xy| multiply(&xy, &ez));
    let rhs = multiply(&ey, &ez).and_then(|yz| multiply(&ex, &yz));
    r.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || {
        format!("(({x})·({y}))·({z}) = {} but ({x})·(({y})·({z})) = {}", show(&lhs), show(&rhs))
    });
}

fn check_bilinear(r: &mut Report, x: &BasisDiagram, w: &BasisDiagram, z: &BasisDiagram) {
    let (ex, ew, ez) = (E::from_basis(x.clone()), E::from_basis(w.clone()), E::from_basis(z.clone()));
    let lhs = ex.checked_add(&ew).and_then(|s| multiply(&s, &ez));
    let rhs = multiply(&ex, &ez).and_then(|a| multiply(&ew, &ez).and_then(|b| a.checked_add(&b)));
    r.check(matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b), || format!("(({x})+({w}))·({z}) is not additive"));
}

/// Cellularity: `x·C^μ_{γδ}` modulo weights above `μ` is
/// `Σ r_x(γ',γ) C^μ_{γ'δ}` with `r_x` independent of `δ` and equal to the
/// cell module action; also `s_{aλb}(μ)` does not depend on `d`.
pub fn cellularity(max_vertices: usize) -> Report {
    let mut r = Report::new("cellularity");
    for block in blocks_up_to(max_vertices) {
        for restrict in [false, true] {
            let top = block.defect();
            let keep = |w: &Weight| !restrict || w.defect() == top;
            let basis = if restrict { basis_h(&block) } else { basis_k(&block) };
            for mu in block.members() {
                let below: Vec<Weight> = weights_below(&block, mu).into_iter().filter(|w| keep(w)).collect();
                let module = CellModule::new(&block, mu).expect("μ in block");
                for x in &basis {
                    let ex = E::from_basis(x.clone());
                    for gamma in &below {
                        let mut rows: Vec<(Weight, BTreeMap<Weight, i64>)> = Vec::new();
                        for delta in &below {
                            let c = BasisDiagram::from_weights(gamma, mu, delta).expect("γ ⊂ μ ⊃ δ");
                            let Some(prod) = r.check_result(multiply(&ex, &E::from_basis(c.clone())), || pair_text(x, &c))
                            else {
                                continue;
                            };
                            let mut row = BTreeMap::new();
                            for (z, k) in prod.terms() {
                                let nu = z.weight();
                                if mu.bruhat_lt(nu).unwrap_or(false) {
                                    continue;
                                }
                                let ok = nu == mu && *z.cap() == cap_diagram_of(delta) && keep(&z.cup_weight());
                                r.check(ok, || format!("{} has term {z} outside the cell of {mu}", pair_text(x, &c)));
                                row.insert(z.cup_weight(), *k);
                            }
                            rows.push((delta.clone(), row));
                        }
                        for (delta, row) in &rows[1..] {
                            r.check(*row == rows[0].1, || {
                                format!("({x}) on cell {mu}: coefficients for γ={gamma} differ between δ={} and δ={delta}", rows[0].0)
                            });
                        }
                        if let Some((_, row)) = rows.first() {
                            let v = module.vector::<i64>(gamma).expect("γ ⊂ μ");
                            let acted = module.act(&ex, &v);
                            let expected: BTreeMap<Weight, i64> = acted
                                .map(|a| a.terms().map(|(c, k)| (c.anticlockwise_weight(mu), *k)).collect())
                                .unwrap_or_default();
                            r.check(*row == expected, || {
                                format!("({x}) on cell {mu} at γ={gamma} disagrees with the cell module action")
                            });
                        }
                    }
                }
            }
            if restrict {
                continue;
            }
            for x in &basis {
                for mu in block.members() {
                    if !x.cup().is_oriented(mu) || !x.cap().mirror().is_oriented(mu) {
                        continue;
                    }
                    let Ok(s) = structure_constant::<i64>(x, mu) else {
                        r.check(false, || format!("structure constant of {x} at {mu} failed"));
                        continue;
                    };
                    for d in cap_diagrams_oriented_by(&block, mu) {
                        let t = structure_constant_with::<i64>(x, mu, &d);
                        r.check(t.as_ref().ok() == Some(&s), || {
                            format!("structure constant of {x} at {mu} changes with d = {d}")
                        });
                    }
                }
            }
        }
    }
    r
}

fn cap_diagrams_oriented_by(block: &Block, mu: &Weight) -> Vec<CapDiagram> {
    weights_below(block, mu).iter().map(cap_diagram_of).collect()
}

/// The symmetrising form on `H_Λ`, the `#` involution, closure of `H_Λ`
/// under products, and `y⊗y ↦ y⊗y` never firing there.
pub fn symmetric(max_vertices: usize) -> Report {
    let mut r = Report::new("symmetric");
    for block in blocks_up_to(max_vertices) {
        let basis = basis_h(&block);
        let defect = block.defect();
        let index: BTreeMap<&BasisDiagram, usize> = basis.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let mut partner = vec![usize::MAX; basis.len()];
        for (i, x) in basis.iter().enumerate() {
            match hash_involution(x) {
                Ok(h) => {
                    r.check(h.degree() + x.degree() == 2 * defect, || format!("deg({x}) + deg({x}#) ≠ 2·{defect}"));
                    r.check(hash_involution(&h).ok().as_ref() == Some(x), || format!("# is not an involution at {x}"));
                    match index.get(&h) {
                        Some(&j) => partner[i] = j,
                        None => r.check(false, || format!("{x}# = {h} is not a basis vector of H")),
                    }
                }
                Err(e) => r.check(false, || format!("{x}#: {e}")),
            }
        }
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let (xy, trace) = match multiply_traced::<i64>(x, y) {
                    Ok(v) => v,
                    Err(e) => {
                        r.check(false, || format!("{}: {e}", pair_text(x, y)));
                        continue;
                    }
                };
                r.check(xy.basis().all(in_h), || format!("{} leaves H", pair_text(x, y)));
                r.check(trace.two_lines_kept == 0, || format!("{} kept two lines through a surgery", pair_text(x, y)));
                let t = tau(&xy);
                let want = i64::from(partner[i] == j);
                r.check(t.as_ref().ok() == Some(&want), || format!("τ({}) = {:?}, expected {want}", pair_text(x, y), t));
            }
        }
    }
    r
}

/// Counting identities: `2^defect` weights above each weight, Catalan
/// numbers, `C = DDᵀ`, basis sizes from `D`, and the standard filtration
/// and layer identities for projectives and cell modules.
pub fn counts(max_vertices: usize) -> Report {
    let mut r = Report::new("counts");
    let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430];
    for (k, &want) in catalan.iter().enumerate().take(max_vertices.min(8) / 2 + 1).skip(1) {
        let n = khovanov_block(k).maximal_defect().len();
        r.check(n == want, || format!("|Λ°| = {n} for {k} ∨'s, expected {want}"));
    }
    for block in blocks_up_to(max_vertices) {
        let Some(d) = r.check_result(decomposition_matrix::<i64>(&block), || format!("D of {block}")) else { continue };
        let Some(c) = r.check_result(cartan_matrix::<i64>(&block), || format!("C of {block}")) else { continue };
        r.check(d.is_upper_unitriangular(), || format!("D of {block} is not upper unitriangular"));
        r.check(d.checked_mul(&d.transpose()).ok().as_ref() == Some(&c), || format!("C ≠ DDᵀ for {block}"));
        r.check(c.is_symmetric(), || format!("C of {block} is not symmetric"));
        let m = block.members();
        let mut dim_k = 0usize;
        for (j, mu) in m.iter().enumerate() {
            let col: usize = (0..m.len()).map(|i| d.get(i, j).at_one().unwrap_or(0) as usize).sum();
            dim_k += col * col;
            let module = CellModule::new(&block, mu).expect("μ in block");
            let col_q = (0..m.len()).try_fold(P::zero(), |acc, i| acc.checked_add(d.get(i, j)));
            r.check(col_q.ok() == Some(module.graded_dimension()), || format!("dim_q V({mu}) ≠ column of D"));
            let layered = module.layers().iter().enumerate().fold(P::zero(), |acc, (k, l)| {
                acc + P::monomial(k as i32, l.len() as i64)
            });
            r.check(layered == module.graded_dimension(), || format!("layers of V({mu}) do not add up"));
        }
        r.check(dim_k == basis_k(&block).len(), || format!("|basis_K({block})| ≠ Σ column sums²"));
        for (i, lambda) in m.iter().enumerate() {
            let above = weights_above(&block, lambda);
            let expected = 1usize << lambda.defect();
            r.check(above.len() == expected, || format!("#{{μ ⊃ {lambda}}} = {}, expected {expected}", above.len()));
            r.check(c.get(i, i).at_one().ok() == Some(expected as i64), || format!("c_λλ(1) ≠ 2^defect at {lambda}"));
            let Some(f) = r.check_result(projective_filtration(&block, lambda), || format!("filtration of P({lambda})"))
            else {
                continue;
            };
            r.check(f.len() == expected, || format!("P({lambda}) has {} sections", f.len()));
            r.check(f.last().map(|s| (&s.mu, s.shift)) == Some((lambda, 0)), || format!("P({lambda}) top is not V({lambda})"));
            for (a, s) in f.iter().enumerate() {
                for t in &f[a + 1..] {
                    r.check(!s.mu.bruhat_lt(&t.mu).unwrap_or(true), || format!("P({lambda}) sections out of order"));
                }
                r.check(subset_rel(lambda, &s.mu).unwrap_or(false), || format!("{} is not above {lambda}", s.mu));
            }
            let via_sections = filtration_graded_dimension::<i64>(&block, &f);
            let direct = projective_graded_dimension::<i64>(&block, lambda);
            r.check(matches!((&via_sections, &direct), (Ok(a), Ok(b)) if a == b), || {
                format!("dim_q P({lambda}) from sections differs from the basis count")
            });
            let via_d = (0..m.len()).try_fold(P::zero(), |acc, j| {
                let v = CellModule::new(&block, &m[j]).expect("in block").graded_dimension::<i64>();
                acc.checked_add(&d.get(i, j).checked_mul(&v)?)
            });
            r.check(via_d.ok() == direct.ok(), || format!("[P({lambda})] ≠ Σ d_λμ [V(μ)] in dimensions"));
        }
    }
    r
}
