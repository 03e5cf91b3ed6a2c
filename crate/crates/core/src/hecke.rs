//! Hecke algebra modules over a descent-classified basis: the action of the
//! generators `H_s`, the bar involution, canonical bases and mu-coefficients.
//!
//! One engine serves both the Gelfand vertex sets and the parabolic sets of
//! the `parabolic` module; all it needs is a [`ClassifiedBasis`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::gelfand::{DescentClass, GelfandSet};
use crate::laurent::Laurent;
use crate::report::Report;
use crate::weyl::{Generator, GroupType, WeylElement};
use crate::{Error, Result};

/// Which of the two modules: `M` sends weak ascents to `-x^-1` and weak
/// descents to `x`; `N` swaps the two scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    M,
    N,
}

impl Family {
    pub fn dual(self) -> Family {
        match self {
            Family::M => Family::N,
            Family::N => Family::M,
        }
    }

    /// `(sign, exponent)` of the scalar by which `H_s` acts on a weak class.
    fn weak_scalar(self, class: DescentClass) -> (i64, i32) {
        match (self, class) {
            (Family::M, DescentClass::WeakAsc) | (Family::N, DescentClass::WeakDesc) => (-1, -1),
            _ => (1, 1),
        }
    }

    /// Whether `H_s + x^-1` acts by `x + x^-1` on the canonical element.
    pub fn is_descent(self, class: DescentClass) -> bool {
        match class {
            DescentClass::StrictDesc => true,
            DescentClass::StrictAsc => false,
            DescentClass::WeakDesc => self == Family::M,
            DescentClass::WeakAsc => self == Family::N,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::M => "m",
            Family::N => "n",
        })
    }
}

/// A finite set of labels with, per simple generator, a descent class and a
/// move (the strict-class partner; the label itself for weak classes).
#[derive(Clone, Debug)]
pub struct ClassifiedBasis {
    group: GroupType,
    generators: Vec<Generator>,
    labels: Vec<String>,
    degrees: Vec<u32>,
    classes: Vec<Vec<DescentClass>>,
    moves: Vec<Vec<usize>>,
}

impl ClassifiedBasis {
    /// Validates that moves are involutions pairing opposite strict classes
    /// two degrees apart, and that labels are sorted by degree.
    pub fn new(
        group: GroupType,
        labels: Vec<String>,
        degrees: Vec<u32>,
        classes: Vec<Vec<DescentClass>>,
        moves: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let generators = group.generators();
        let n = labels.len();
        let bad = |msg: String| Err(Error::InvalidElement(msg));
        if degrees.len() != n || classes.len() != n || moves.len() != n {
            return bad("basis tables have different lengths".into());
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return bad("labels are not sorted by degree".into());
        }
        for z in 0..n {
            if classes[z].len() != generators.len() || moves[z].len() != generators.len() {
                return bad(format!("label {} has wrong generator count", labels[z]));
            }
            for slot in 0..generators.len() {
                let (c, y) = (classes[z][slot], moves[z][slot]);
                let ok = match c {
                    DescentClass::WeakAsc | DescentClass::WeakDesc => y == z,
                    DescentClass::StrictAsc => {
                        y < n
                            && moves[y][slot] == z
                            && classes[y][slot] == DescentClass::StrictDesc
                            && degrees[y] == degrees[z] + 2
                    }
                    DescentClass::StrictDesc => {
                        y < n
                            && moves[y][slot] == z
                            && classes[y][slot] == DescentClass::StrictAsc
                            && degrees[z] == degrees[y] + 2
                    }
                };
                if !ok {
                    return bad(format!(
                        "inconsistent {} {c} at {}",
                        generators[slot], labels[z]
                    ));
                }
            }
        }
        Ok(Self {
            group,
            generators,
            labels,
            degrees,
            classes,
            moves,
        })
    }

    /// The Gelfand vertex basis graded by length in the rank-2n group.
    pub fn from_gelfand(set: &GelfandSet) -> Self {
        let gens = set.generators().len();
        let labels = set.vertices().iter().map(|v| v.z.to_string()).collect();
        let degrees = set.vertices().iter().map(|v| v.z.length() as u32).collect();
        let classes = set.vertices().iter().map(|v| v.classes.clone()).collect();
        let moves = (0..set.len())
            .map(|i| (0..gens).map(|slot| set.move_index(i, slot)).collect())
            .collect();
        Self::new(*set.group(), labels, degrees, classes, moves)
            .expect("Gelfand classification is consistent")
    }

    pub fn group(&self) -> &GroupType {
        &self.group
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn slot(&self, s: Generator) -> Option<usize> {
        self.generators.iter().position(|&t| t == s)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, z: usize) -> &str {
        &self.labels[z]
    }

    pub fn degree(&self, z: usize) -> u32 {
        self.degrees[z]
    }

    pub fn class(&self, z: usize, slot: usize) -> DescentClass {
        self.classes[z][slot]
    }

    pub fn moved(&self, z: usize, slot: usize) -> usize {
        self.moves[z][slot]
    }

    pub fn strict_descents(&self, z: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.generators.len()).filter(move |&slot| self.classes[z][slot] == DescentClass::StrictDesc)
    }

    /// Label indices grouped by degree, in increasing degree.
    fn levels(&self) -> Vec<Vec<usize>> {
        let mut levels: Vec<Vec<usize>> = Vec::new();
        for z in 0..self.len() {
            match levels.last_mut() {
                Some(level) if self.degrees[level[0]] == self.degrees[z] => level.push(z),
                _ => levels.push(vec![z]),
            }
        }
        levels
    }
}

/// A finite linear combination of basis labels with Laurent coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleVector {
    entries: BTreeMap<usize, Laurent>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(z: usize) -> Self {
        Self {
            entries: BTreeMap::from([(z, Laurent::one())]),
        }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Laurent)>) -> Self {
        let mut v = Self::zero();
        for (z, c) in entries {
            v.add_term(z, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, z: usize) -> Option<&Laurent> {
        self.entries.get(&z)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Laurent)> + '_ {
        self.entries.iter().map(|(z, c)| (*z, c))
    }

    pub fn add_term(&mut self, z: usize, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(z).or_default();
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&z);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Laurent, other: &ModuleVector) {
        for (z, p) in &other.entries {
            let mut term = Laurent::zero();
            term.add_product(c, p);
            self.add_term(*z, &term);
        }
    }

    /// `self -= k * other` for an integer `k`.
    fn sub_int_scaled(&mut self, k: &BigInt, other: &ModuleVector) {
        let neg = -k;
        for (z, p) in &other.entries {
            self.add_term(*z, &p.scale(&neg));
        }
    }

    pub fn scaled(&self, c: &Laurent) -> ModuleVector {
        let mut out = ModuleVector::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.sub_int_scaled(&BigInt::one(), other);
        out
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(&Laurent::one(), other);
        out
    }
}

/// `H_s v + x^k v` when `shift = Some(k)`, else `H_s v`, with `s` given by slot.
fn act_with_shift(
    family: Family,
    basis: &ClassifiedBasis,
    slot: usize,
    v: &ModuleVector,
    shift: Option<(i64, i32)>,
) -> ModuleVector {
    let mut out: BTreeMap<usize, Laurent> = BTreeMap::new();
    let mut push = |z: usize, c: &Laurent, sign: i64, e: i32| {
        let slot = out.entry(z).or_default();
        if sign > 0 {
            slot.add_shifted(c, e);
        } else {
            slot.sub_shifted(c, e);
        }
    };
    for (z, c) in v.iter() {
        match basis.class(z, slot) {
            DescentClass::StrictAsc => push(basis.moved(z, slot), c, 1, 0),
            DescentClass::StrictDesc => {
                push(basis.moved(z, slot), c, 1, 0);
                push(z, c, 1, 1);
                push(z, c, -1, -1);
            }
            weak => {
                let (sign, e) = family.weak_scalar(weak);
                push(z, c, sign, e);
            }
        }
        if let Some((sign, e)) = shift {
            push(z, c, sign, e);
        }
    }
    out.retain(|_, c| !c.is_zero());
    ModuleVector { entries: out }
}

/// `H_s · v`.
pub fn act(family: Family, basis: &ClassifiedBasis, s: Generator, v: &ModuleVector) -> ModuleVector {
    let slot = basis.slot(s).expect("generator of the basis group");
    act_with_shift(family, basis, slot, v, None)
}

/// `H_w · v` for a word `w = s_1 ... s_k` (rightmost letter acts first).
pub fn act_word(family: Family, basis: &ClassifiedBasis, word: &[Generator], v: &ModuleVector) -> ModuleVector {
    word.iter().rev().fold(v.clone(), |acc, &s| act(family, basis, s, &acc))
}

/// `H_s^{-1} · v = (H_s - x + x^-1) · v`.
pub fn act_inverse(family: Family, basis: &ClassifiedBasis, s: Generator, v: &ModuleVector) -> ModuleVector {
    let hv = act(family, basis, s, v);
    let shift = Laurent::from_terms([(-1, 1), (1, -1)]);
    hv.add(&v.scaled(&shift))
}

/// Checks the quadratic relation for every generator and every braid relation
/// on every standard basis vector.
pub fn verify_module_axioms(family: Family, basis: &ClassifiedBasis) -> Report {
    let mut report = Report::new(format!("module axioms {} {}", family, basis.group()));
    let gens = basis.generators().to_vec();
    let group = *basis.group();
    let x_minus = Laurent::from_terms([(1, 1), (-1, -1)]);
    for z in 0..basis.len() {
        let e = ModuleVector::unit(z);
        for &s in &gens {
            let hs = act(family, basis, s, &e);
            let hss = act(family, basis, s, &hs);
            // H_s^2 = (x - x^-1) H_s + 1
            let rhs = hs.scaled(&x_minus).add(&e);
            report.check(hss == rhs, || format!("quadratic {s} at {}", basis.label(z)));
        }
        for (i, &s) in gens.iter().enumerate() {
            for &t in &gens[i + 1..] {
                let m = group.coxeter_order(s, t);
                let word_st: Vec<Generator> = (0..m).map(|k| if k % 2 == 0 { s } else { t }).collect();
                let word_ts: Vec<Generator> = (0..m).map(|k| if k % 2 == 0 { t } else { s }).collect();
                let a = act_word(family, basis, &word_st, &e);
                let b = act_word(family, basis, &word_ts, &e);
                report.check(a == b, || format!("braid {s}{t} (m={m}) at {}", basis.label(z)));
            }
        }
    }
    report
}

/// The bar involution of a module, stored by its values on basis vectors.
#[derive(Clone, Debug)]
pub struct BarOperator {
    images: Vec<ModuleVector>,
}

impl BarOperator {
    /// Fixes labels with no strict descent; otherwise
    /// `bar(B_z) = H_s^{-1} bar(B_{szs})` for the smallest strict descent `s`.
    pub fn new(family: Family, basis: &ClassifiedBasis) -> Self {
        let mut images: Vec<ModuleVector> = Vec::with_capacity(basis.len());
        for z in 0..basis.len() {
            let image = match basis.strict_descents(z).next() {
                None => ModuleVector::unit(z),
                Some(slot) => {
                    let y = basis.moved(z, slot);
                    act_inverse(family, basis, basis.generators()[slot], &images[y])
                }
            };
            images.push(image);
        }
        Self { images }
    }

    pub fn image(&self, z: usize) -> &ModuleVector {
        &self.images[z]
    }

    pub fn apply(&self, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (z, c) in v.iter() {
            out.add_scaled(&c.bar(), &self.images[z]);
        }
        out
    }
}

/// Which strict descent drives the canonical-basis recursion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DescentChoice {
    #[default]
    Smallest,
    Largest,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CanonicalOptions {
    pub choice: DescentChoice,
    /// Compute columns of equal degree concurrently.
    pub parallel: bool,
}

/// Columns of the canonical basis expressed in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalBasisTable {
    family: Family,
    columns: Vec<ModuleVector>,
}

impl CanonicalBasisTable {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column(&self, z: usize) -> &ModuleVector {
        &self.columns[z]
    }

    pub fn entry(&self, y: usize, z: usize) -> Laurent {
        self.columns[z].get(y).cloned().unwrap_or_default()
    }

    /// Coefficient of `x^-1` in entry `(y, z)`.
    pub fn mu(&self, y: usize, z: usize) -> i64 {
        self.columns[z].get(y).map_or(0, |p| p.coeff_i64(-1))
    }

    /// All `(y, z, mu(y, z))` with nonzero mu.
    pub fn mu_entries(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for (z, col) in self.columns.iter().enumerate() {
            for (y, p) in col.iter() {
                let mu = p.coeff_i64(-1);
                if mu != 0 {
                    out.push((y, z, mu));
                }
            }
        }
        out
    }

    /// One line `y z polynomial` per nonzero entry, ordered by `(z, y)`.
    pub fn dump(&self, basis: &ClassifiedBasis) -> String {
        let mut out = String::new();
        for (z, col) in self.columns.iter().enumerate() {
            for (y, p) in col.iter() {
                out.push_str(&format!("{} {} {}\n", basis.label(y), basis.label(z), p));
            }
        }
        out
    }
}

/// Canonical basis by the recursion
/// `C_z = (H_s + x^-1) C_y - sum mu(u, y) C_u` over `u` having `s` as a descent,
/// where `s` is a strict descent of `z` and `y = szs`.
pub fn canonical_basis(family: Family, basis: &ClassifiedBasis) -> CanonicalBasisTable {
    canonical_basis_with(family, basis, CanonicalOptions::default())
}

pub fn canonical_basis_with(
    family: Family,
    basis: &ClassifiedBasis,
    options: CanonicalOptions,
) -> CanonicalBasisTable {
    let mut columns: Vec<ModuleVector> = vec![ModuleVector::zero(); basis.len()];
    for level in basis.levels() {
        let compute = |z: usize| canonical_column(family, basis, options.choice, z, &columns);
        let done: Vec<ModuleVector> = if options.parallel && level.len() > 1 {
            level.par_iter().map(|&z| compute(z)).collect()
        } else {
            level.iter().map(|&z| compute(z)).collect()
        };
        for (z, col) in level.into_iter().zip(done) {
            columns[z] = col;
        }
    }
    CanonicalBasisTable { family, columns }
}

fn canonical_column(
    family: Family,
    basis: &ClassifiedBasis,
    choice: DescentChoice,
    z: usize,
    columns: &[ModuleVector],
) -> ModuleVector {
    let slot = match choice {
        DescentChoice::Smallest => basis.strict_descents(z).next(),
        DescentChoice::Largest => basis.strict_descents(z).last(),
    };
    let Some(slot) = slot else {
        return ModuleVector::unit(z);
    };
    let y = basis.moved(z, slot);
    let below = &columns[y];
    let mut col = act_with_shift(family, basis, slot, below, Some((1, -1)));
    for (u, p) in below.iter() {
        if u == y || !family.is_descent(basis.class(u, slot)) {
            continue;
        }
        let mu = p.coeff(-1);
        if !mu.is_zero() {
            col.sub_int_scaled(&mu, &columns[u]);
        }
    }
    col
}

/// Canonical basis by solving `bar(C_z) = C_z` entry by entry against the
/// bar operator's matrix, from the top degree down. Quadratic in the basis
/// size; meant as an oracle.
pub fn canonical_basis_by_bar_solve(family: Family, basis: &ClassifiedBasis) -> CanonicalBasisTable {
    let bar = BarOperator::new(family, basis);
    let mut columns = Vec::with_capacity(basis.len());
    for z in 0..basis.len() {
        let mut col = ModuleVector::unit(z);
        for u in (0..z).rev() {
            if basis.degree(u) >= basis.degree(z) {
                continue;
            }
            let mut q = Laurent::zero();
            for (y, p) in col.iter() {
                if let Some(r) = bar.image(y).get(u) {
                    q.add_product(r, &p.bar());
                }
            }
            col.add_term(u, &q.negative_part());
        }
        columns.push(col);
    }
    CanonicalBasisTable { family, columns }
}

/// Checks bar invariance, unitriangularity with `x^-1 Z[x^-1]` corrections,
/// degree support, the exponent parity rule, and agreement with the
/// recursion driven by the largest strict descent.
pub fn verify_canonical_table(basis: &ClassifiedBasis, table: &CanonicalBasisTable) -> Report {
    let family = table.family();
    let mut report = Report::new(format!("canonical basis {} {}", family, basis.group()));
    let bar = BarOperator::new(family, basis);
    for z in 0..basis.len() {
        let col = table.column(z);
        report.check(bar.apply(col) == *col, || format!("column {} not bar invariant", basis.label(z)));
        report.check(col.get(z).is_some_and(Laurent::is_one), || {
            format!("column {} diagonal is not 1", basis.label(z))
        });
        for (y, p) in col.iter() {
            if y == z {
                continue;
            }
            let (dy, dz) = (basis.degree(y), basis.degree(z));
            report.check(p.in_inverse_ideal(), || {
                format!("entry ({}, {}) = {p} has nonnegative powers", basis.label(y), basis.label(z))
            });
            report.check(dy < dz && (dz - dy) % 2 == 0, || {
                format!("entry ({}, {}) breaks degree support", basis.label(y), basis.label(z))
            });
            let half_gap = ((dz - dy) / 2) as i32;
            report.check(p.terms().all(|(e, _)| (e - half_gap) % 2 == 0), || {
                format!("entry ({}, {}) = {p} breaks exponent parity", basis.label(y), basis.label(z))
            });
        }
    }
    let other = canonical_basis_with(
        family,
        basis,
        CanonicalOptions {
            choice: DescentChoice::Largest,
            parallel: false,
        },
    );
    report.check(other == *table, || "table depends on the choice of strict descent".into());
    report
}

/// Trace of `w` on the module specialised at `x = 1`, where strict classes
/// permute labels and weak classes act by `±1`.
pub fn trace_at_one(family: Family, basis: &ClassifiedBasis, w: &WeylElement) -> Result<i64> {
    basis.group().require_member(w)?;
    let word: Vec<usize> = w
        .reduced_word()
        .iter()
        .map(|&s| basis.slot(s).expect("generator of the group"))
        .collect();
    Ok(trace_of_word(family, basis, &word))
}

fn trace_of_word(family: Family, basis: &ClassifiedBasis, word: &[usize]) -> i64 {
    let mut trace = 0;
    for z in 0..basis.len() {
        let mut at = z;
        let mut sign = 1;
        for &slot in word.iter().rev() {
            let class = basis.class(at, slot);
            if class.is_strict() {
                at = basis.moved(at, slot);
            } else {
                sign *= family.weak_scalar(class).0;
            }
        }
        if at == z {
            trace += sign;
        }
    }
    trace
}

/// Compares the `x = 1` trace of every group element with its number of
/// square roots, one line per conjugacy class.
pub fn verify_trace(family: Family, basis: &ClassifiedBasis) -> Result<Report> {
    let group = *basis.group();
    let squares = group.square_counts()?;
    let mut report = Report::new(format!("character {} {}", family, group));
    for class in group.conjugacy_classes() {
        let rep = &class[0];
        let roots = squares.get(rep).copied().unwrap_or(0) as i64;
        for w in &class {
            let t = trace_at_one(family, basis, w)?;
            report.check(t == roots, || format!("class of {rep}: trace {t} at {w}, square roots {roots}"));
        }
    }
    Ok(report)
}

/// `sum_k (-1)^{(deg y - deg k)/2} m_{yk} n_{iota z, iota k} = delta_{yz}`,
/// with `m` the `M` table, `n` the `N` table and `iota` a label involution.
pub fn verify_inversion(
    basis: &ClassifiedBasis,
    m_table: &CanonicalBasisTable,
    n_table: &CanonicalBasisTable,
    iota: &[usize],
) -> Report {
    let mut report = Report::new(format!("inversion {}", basis.group()));
    let size = basis.len();
    for y in 0..size {
        for z in 0..size {
            let mut sum = Laurent::zero();
            for k in 0..size {
                let (Some(m), Some(n)) = (m_table.column(k).get(y), n_table.column(iota[k]).get(iota[z])) else {
                    continue;
                };
                let gap = basis.degree(y) as i64 - basis.degree(k) as i64;
                let term = m * n;
                if (gap / 2) % 2 == 0 {
                    sum += &term;
                } else {
                    sum -= &term;
                }
            }
            let expected = if y == z { Laurent::one() } else { Laurent::zero() };
            report.check(sum == expected, || {
                format!("({}, {}) gives {sum}", basis.label(y), basis.label(z))
            });
        }
    }
    report
}

/// `mu` as a machine integer; mu-coefficients are tiny in practice.
pub fn mu_value(p: &Laurent) -> i64 {
    p.coeff(-1).to_i64().expect("mu fits in i64")
}
