//! Model triples `(J, z_min, sigma)`, the parabolic sets `W^J x orbit(z_min)`
//! with their height function and `W`-action, and the descent-preserving
//! bijection `phi` from Gelfand vertices onto them.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::gelfand::{DescentClass, GelfandSet};
use crate::hecke::ClassifiedBasis;
use crate::report::Report;
use crate::weyl::{CoxeterType, Generator, GroupType, WeylElement};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelTriple {
    /// `"k=<k>"`, or `"sgn"` for the extra type-D triple.
    pub name: String,
    /// Size `m = 2k` of the first factor of `W_J`.
    pub m: usize,
    pub j: Vec<Generator>,
    pub z_min: WeylElement,
    pub sigma: BTreeMap<Generator, i8>,
}

impl ModelTriple {
    fn build(group: &GroupType, m: usize) -> Self {
        let cut = if group.ty == CoxeterType::D && m == 0 { -1 } else { m as i32 };
        let j: Vec<Generator> = group.generators().into_iter().filter(|s| s.0 != cut).collect();
        let sigma = j
            .iter()
            .map(|&s| (s, if s.0 < m as i32 { 1 } else { -1 }))
            .collect();
        let mut window: Vec<i32> = (1..=group.rank as i32).collect();
        for i in (0..m).step_by(2) {
            window.swap(i, i + 1);
        }
        let z_min = WeylElement::new(group.ty, window).expect("valid z_min");
        let name = if group.ty == CoxeterType::D && m == 0 {
            "sgn".to_string()
        } else {
            format!("k={}", m / 2)
        };
        Self { name, m, j, z_min, sigma }
    }

    pub fn contains(&self, s: Generator) -> bool {
        self.j.contains(&s)
    }

    /// `sigma(t)` for `t` in `W_J`, multiplying generator values along a reduced word.
    pub fn sigma_of(&self, t: &WeylElement) -> i8 {
        t.reduced_word()
            .iter()
            .map(|s| *self.sigma.get(s).expect("element of W_J"))
            .product()
    }

    /// Whether `w` is a minimal left coset representative for `W_J`.
    pub fn is_minimal(&self, w: &WeylElement) -> bool {
        self.j.iter().all(|&s| !w.has_right_descent(s))
    }
}

impl fmt::Display for ModelTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The triples in increasing `m`; type D starts with the `sgn` triple and has no `k=0`.
pub fn model_triples(group: &GroupType) -> Vec<ModelTriple> {
    (0..=group.rank / 2)
        .map(|k| ModelTriple::build(group, 2 * k))
        .collect()
}

/// Minimal left coset representatives `W^J`, sorted by `(length, window)`.
pub fn minimal_coset_reps(group: &GroupType, j: &[Generator]) -> Vec<WeylElement> {
    let minimal = |w: &WeylElement| j.iter().all(|&s| !w.has_right_descent(s));
    let gens = group.generators();
    let start = group.identity();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(w) = queue.pop_front() {
        for &s in &gens {
            let sw = w.gen_mul(s);
            if minimal(&sw) && seen.insert(sw.clone()) {
                queue.push_back(sw);
            }
        }
        out.push(w);
    }
    out.sort_by(|a, b| (a.length(), a).cmp(&(b.length(), b)));
    out
}

/// `W_J`-conjugacy class of `z_min`, sorted by `(length, window)`.
pub fn orbit(triple: &ModelTriple) -> Vec<WeylElement> {
    let mut seen = HashSet::from([triple.z_min.clone()]);
    let mut queue = VecDeque::from([triple.z_min.clone()]);
    let mut out = Vec::new();
    while let Some(z) = queue.pop_front() {
        for &s in &triple.j {
            let y = z.conjugate_gen(s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(z);
    }
    out.sort_by(|a, b| (a.length(), a).cmp(&(b.length(), b)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KElement {
    pub w: WeylElement,
    pub z: WeylElement,
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.w, self.z)
    }
}

/// Twice the height: `2 l(w) + l(z) - l(z_min)`.
pub fn height(triple: &ModelTriple, tau: &KElement) -> u32 {
    (2 * tau.w.length() + tau.z.length() - triple.z_min.length()) as u32
}

/// `t = w^-1 s w` as a generator of `J`, when `sw` leaves `W^J`.
fn conjugated_generator(triple: &ModelTriple, s: Generator, w: &WeylElement) -> Option<Generator> {
    let sw = w.gen_mul(s);
    if triple.is_minimal(&sw) {
        return None;
    }
    let t = w.inverse().mul(&sw);
    let found = triple
        .j
        .iter()
        .copied()
        .find(|&g| t == w.group().generator(g).expect("generator of W"));
    Some(found.expect("w^-1 s w lies in J when sw leaves W^J"))
}

pub fn s_action(triple: &ModelTriple, s: Generator, tau: &KElement) -> KElement {
    match conjugated_generator(triple, s, &tau.w) {
        None => KElement {
            w: tau.w.gen_mul(s),
            z: tau.z.clone(),
        },
        Some(t) => KElement {
            w: tau.w.clone(),
            z: tau.z.conjugate_gen(t),
        },
    }
}

pub fn classify_tau(triple: &ModelTriple, s: Generator, tau: &KElement) -> DescentClass {
    let moved = s_action(triple, s, tau);
    let (h, hs) = (height(triple, tau), height(triple, &moved));
    if hs > h {
        return DescentClass::StrictAsc;
    }
    if hs < h {
        return DescentClass::StrictDesc;
    }
    let t = tau.w.inverse().mul(&tau.w.gen_mul(s));
    if triple.sigma_of(&t) > 0 {
        DescentClass::WeakDesc
    } else {
        DescentClass::WeakAsc
    }
}

/// `W^J x orbit(z_min)` for one triple, in canonical order `(2 ht, w, z)`.
pub fn k_elements(group: &GroupType, triple: &ModelTriple) -> Vec<KElement> {
    let reps = minimal_coset_reps(group, &triple.j);
    let zs = orbit(triple);
    let mut out: Vec<KElement> = reps
        .iter()
        .flat_map(|w| zs.iter().map(move |z| KElement { w: w.clone(), z: z.clone() }))
        .collect();
    out.sort_by(|a, b| (height(triple, a), a).cmp(&(height(triple, b), b)));
    out
}

/// The disjoint union of the parabolic sets over all model triples.
#[derive(Clone, Debug)]
pub struct KSet {
    group: GroupType,
    triples: Vec<ModelTriple>,
    elements: Vec<(usize, KElement)>,
    index: HashMap<(usize, KElement), usize>,
    basis: ClassifiedBasis,
}

impl KSet {
    pub fn new(group: GroupType) -> Self {
        let triples = model_triples(&group);
        let mut elements: Vec<(usize, KElement)> = triples
            .iter()
            .enumerate()
            .flat_map(|(i, t)| k_elements(&group, t).into_iter().map(move |tau| (i, tau)))
            .collect();
        elements.sort_by(|(i, a), (j, b)| {
            (height(&triples[*i], a), *i, a).cmp(&(height(&triples[*j], b), *j, b))
        });
        let index: HashMap<(usize, KElement), usize> =
            elements.iter().cloned().enumerate().map(|(n, key)| (key, n)).collect();
        let gens = group.generators();
        let mut classes = Vec::with_capacity(elements.len());
        let mut moves = Vec::with_capacity(elements.len());
        for (i, tau) in &elements {
            let t = &triples[*i];
            classes.push(gens.iter().map(|&s| classify_tau(t, s, tau)).collect());
            moves.push(gens.iter().map(|&s| index[&(*i, s_action(t, s, tau))]).collect());
        }
        let labels = elements
            .iter()
            .map(|(i, tau)| format!("{} {}", triples[*i].name, tau))
            .collect();
        let degrees = elements.iter().map(|(i, tau)| height(&triples[*i], tau)).collect();
        let basis = ClassifiedBasis::new(group, labels, degrees, classes, moves)
            .expect("parabolic classification is consistent");
        Self {
            group,
            triples,
            elements,
            index,
            basis,
        }
    }

    pub fn group(&self) -> &GroupType {
        &self.group
    }

    pub fn triples(&self) -> &[ModelTriple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> (&ModelTriple, &KElement) {
        let (t, tau) = &self.elements[i];
        (&self.triples[*t], tau)
    }

    pub fn triple_index(&self, i: usize) -> usize {
        self.elements[i].0
    }

    pub fn index_of(&self, triple: usize, tau: &KElement) -> Option<usize> {
        self.index.get(&(triple, tau.clone())).copied()
    }

    pub fn basis(&self) -> &ClassifiedBasis {
        &self.basis
    }

    /// Indices belonging to one triple, in canonical order.
    pub fn indices_of_triple(&self, triple: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.elements[i].0 == triple).collect()
    }
}

/// `v = w iota(z) w^-1` in the rank-2n group, where `iota` sends `z` on `[m]`
/// to the same involution, pairs `m+i` with `n+i`, and pairs the last `m`
/// positions consecutively.
pub fn reassemble(group: &GroupType, m: usize, tau: &KElement) -> WeylElement {
    let n = group.rank;
    let mut iota = vec![0i32; 2 * n];
    iota[..m].copy_from_slice(&tau.z.window()[..m]);
    for i in 1..=(n - m) {
        iota[m + i - 1] = (n + i) as i32;
        iota[n + i - 1] = (m + i) as i32;
    }
    for i in (1..=m).step_by(2) {
        let p = 2 * n - m + i;
        iota[p - 1] = p as i32 + 1;
        iota[p] = p as i32;
    }
    let iota = WeylElement::new(group.ty, iota).expect("iota is a signed permutation");
    let mut w = tau.w.window().to_vec();
    w.extend((n as i32 + 1)..=(2 * n) as i32);
    let w = WeylElement::new(group.ty, w).expect("embedded w");
    w.mul(&iota).mul(&w.inverse())
}

/// `(triple index, (w, z))` for a Gelfand vertex `v` of the rank-2n group.
pub fn phi(group: &GroupType, v: &WeylElement) -> Result<(usize, KElement)> {
    let n = group.rank as i32;
    let a: Vec<i32> = (1..=n).filter(|&i| v.apply(i).abs() <= n).collect();
    let b: Vec<i32> = (-n..=n).filter(|&i| i != 0 && v.apply(i) > n).collect();
    let m = a.len();
    let bad = || Error::InvalidElement(format!("{v} is not a Gelfand vertex of {group}"));
    if m % 2 == 1 || b.len() != group.rank - m {
        return Err(bad());
    }
    let psi = |i: i32| i.signum() * a[(i.unsigned_abs() - 1) as usize];
    let psi_inv = |j: i32| {
        let pos = a.iter().position(|&x| x == j.abs()).expect("value in a") as i32 + 1;
        j.signum() * pos
    };
    let mut z: Vec<i32> = (1..=n).collect();
    for i in 1..=m as i32 {
        z[(i - 1) as usize] = psi_inv(v.apply(psi(i)));
    }
    let mut w: Vec<i32> = a.iter().chain(b.iter()).copied().collect();
    if group.ty == CoxeterType::D && b.iter().filter(|&&x| x < 0).count() % 2 == 1 {
        if m == 0 {
            return Err(bad());
        }
        w[0] = -w[0];
        let z_bc = WeylElement::new(CoxeterType::BC, z.clone()).map_err(|_| bad())?;
        z = z_bc.diamond().window().to_vec();
    }
    let tau = KElement {
        w: WeylElement::new(group.ty, w).map_err(|_| bad())?,
        z: WeylElement::new(group.ty, z).map_err(|_| bad())?,
    };
    let triple = m / 2;
    Ok((triple, tau))
}

/// `phi` on every vertex, as indices into the parabolic set.
pub fn phi_map(gelfand: &GelfandSet, kset: &KSet) -> Result<Vec<usize>> {
    gelfand
        .vertices()
        .iter()
        .map(|v| {
            let (t, tau) = phi(gelfand.group(), &v.z)?;
            kset.index_of(t, &tau)
                .ok_or_else(|| Error::InvalidElement(format!("phi({}) = {tau} outside the parabolic set", v.z)))
        })
        .collect()
}

/// Checks that `phi` is a bijection onto each parabolic set, recovers `v`,
/// preserves all four classes, intertwines strict moves with the action,
/// and is compatible with degrees up to a per-triple shift.
pub fn verify_phi(gelfand: &GelfandSet, kset: &KSet) -> Report {
    let group = *gelfand.group();
    let mut report = Report::new(format!("phi {group}"));
    let map = match phi_map(gelfand, kset) {
        Ok(map) => map,
        Err(e) => {
            report.fail(e.to_string());
            return report;
        }
    };
    let image: HashSet<usize> = map.iter().copied().collect();
    report.check(image.len() == map.len() && map.len() == kset.len(), || {
        format!("{} vertices map onto {} of {} parabolic labels", map.len(), image.len(), kset.len())
    });
    let basis = kset.basis();
    let mut shift: HashMap<usize, i64> = HashMap::new();
    for (v, &k) in map.iter().enumerate() {
        let z = &gelfand.vertex(v).z;
        let (triple, tau) = kset.element(k);
        let recovered = reassemble(&group, triple.m, tau);
        report.check(recovered == *z, || format!("{z} reassembles to {recovered}"));
        for slot in 0..gelfand.generators().len() {
            let (cv, ck) = (gelfand.vertex(v).classes[slot], basis.class(k, slot));
            report.check(cv == ck, || {
                format!("{} at {z}: {cv} but {ck} at {tau}", gelfand.generators()[slot])
            });
            if cv.is_strict() {
                let moved = map[gelfand.move_index(v, slot)];
                report.check(moved == basis.moved(k, slot), || {
                    format!("{} move at {z} not intertwined", gelfand.generators()[slot])
                });
            }
        }
        let offset = z.length() as i64 - basis.degree(k) as i64;
        let expected = *shift.entry(kset.triple_index(k)).or_insert(offset);
        report.check(offset == expected, || format!("degree shift at {z} is {offset}, not {expected}"));
    }
    report
}
