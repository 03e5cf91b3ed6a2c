//! The involution sets spanning the Gelfand modules, their descent
//! classification, and the duality involutions.
//!
//! For `W` of rank `n` every vertex is an involution `z` in the group of the
//! same family and rank `2n` with `|z(i)| != i` for all `i` and no visible
//! descent greater than `n`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::weyl::{CoxeterType, Generator, GroupType, WeylElement};
use crate::{Error, Result};

/// How a simple generator acts on a basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DescentClass {
    StrictAsc,
    StrictDesc,
    WeakAsc,
    WeakDesc,
}

impl DescentClass {
    pub fn is_strict(self) -> bool {
        matches!(self, DescentClass::StrictAsc | DescentClass::StrictDesc)
    }

    pub fn is_weak(self) -> bool {
        !self.is_strict()
    }
}

impl fmt::Display for DescentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DescentClass::StrictAsc => "strict-asc",
            DescentClass::StrictDesc => "strict-desc",
            DescentClass::WeakAsc => "weak-asc",
            DescentClass::WeakDesc => "weak-desc",
        })
    }
}

/// Positions `i > 0` with `z(i+1) < min(i, z(i))` or `z(i) < -i`, where `z`
/// is extended by `z(N+1) = N+1`.
pub fn visible_descents(z: &WeylElement) -> BTreeSet<usize> {
    let big_n = z.rank() as i32;
    (1..=big_n)
        .filter(|&i| {
            let next = if i < big_n { z.apply(i + 1) } else { i + 1 };
            next < i.min(z.apply(i)) || z.apply(i) < -i
        })
        .map(|i| i as usize)
        .collect()
}

/// Membership in `F(W)` for `W` of rank `n`: `z` an involution of rank `2n`
/// moving every `|i|`, with the extra parity condition in type D.
pub fn in_f(ty: CoxeterType, n: usize, z: &WeylElement) -> bool {
    if z.rank() != 2 * n || !z.is_involution() {
        return false;
    }
    let fixes_abs = (1..=2 * n as i32).any(|i| z.apply(i).abs() == i);
    if fixes_abs {
        return false;
    }
    match ty {
        CoxeterType::A => z.window().iter().all(|&v| v > 0),
        CoxeterType::BC => true,
        CoxeterType::D => d_parity(n, z).is_multiple_of(2),
    }
}

/// `#{i in [n] : z(i) < -i}`.
fn d_parity(n: usize, z: &WeylElement) -> usize {
    (1..=n as i32).filter(|&i| z.apply(i) < -i).count()
}

pub fn is_gelfand(ty: CoxeterType, n: usize, z: &WeylElement) -> bool {
    in_f(ty, n, z) && visible_descents(z).iter().all(|&i| i <= n)
}

/// The explicit shape: some `i ≡ n (mod 2)` with `-n <= z(n+1) < ... < z(n+i) <= n`
/// and `z(n+i+2j) = n+i+2j-1` above.
pub fn has_normal_form(n: usize, z: &WeylElement) -> bool {
    let n = n as i32;
    (0..=n).filter(|i| (i - n) % 2 == 0).any(|i| {
        let low_ok = (1..=i).all(|k| {
            let v = z.apply(n + k);
            -n <= v && v <= n && (k == 1 || z.apply(n + k - 1) < v)
        });
        let high_ok = (1..)
            .map(|j| n + i + 2 * j)
            .take_while(|&p| p <= 2 * n)
            .all(|p| z.apply(p) == p - 1);
        low_ok && high_ok
    })
}

/// The rank-n involution `w` with `underline(w) = z`.
pub fn base_involution(n: usize, z: &WeylElement) -> WeylElement {
    let n = n as i32;
    let window = (1..=n)
        .map(|i| {
            let v = z.apply(i);
            if v.abs() <= n {
                v
            } else if v > n {
                i
            } else {
                -i
            }
        })
        .collect();
    let ty = match z.ty() {
        CoxeterType::A => CoxeterType::A,
        _ => CoxeterType::BC,
    };
    WeylElement::new(ty, window).expect("window of a Gelfand vertex restricts to a signed permutation")
}

/// The vertex attached to an involution `w` of `W`. In type D, `w` may be an
/// involution of `W^BC_n` outside `W^D_n` provided the parity rule holds.
pub fn underline(group: &GroupType, w: &WeylElement) -> Result<WeylElement> {
    let n = group.rank;
    if w.rank() != n || !w.is_involution() {
        return Err(Error::NotInvolution(w.to_string()));
    }
    match group.ty {
        CoxeterType::A if w.ty() != CoxeterType::A => {
            return Err(Error::GroupMismatch(w.group().to_string(), group.to_string()))
        }
        CoxeterType::D if !in_d_domain(w) => {
            return Err(Error::InvalidElement(format!(
                "{w} is outside the type D underline domain"
            )))
        }
        _ => {}
    }
    let ni = n as i32;
    let flipped: Vec<i32> = (1..=ni).rev().filter(|&a| w.apply(a) == -a).collect();
    let fixed: Vec<i32> = (1..=ni).filter(|&b| w.apply(b) == b).collect();
    let (p, q) = (flipped.len() as i32, fixed.len() as i32);
    let mut window = vec![0i32; 2 * n];
    let mut set = |i: i32, v: i32| {
        if i > 0 {
            window[i as usize - 1] = v;
        } else {
            window[(-i) as usize - 1] = -v;
        }
    };
    for c in 1..=ni {
        let v = w.apply(c);
        if v.abs() != c {
            set(c, v);
        }
    }
    for (i, &a) in flipped.iter().enumerate() {
        let top = ni + 1 + i as i32;
        set(-a, top);
        set(top, -a);
    }
    for (i, &b) in fixed.iter().enumerate() {
        let top = ni + p + 1 + i as i32;
        set(b, top);
        set(top, b);
    }
    let mut k = ni + p + q + 1;
    while k < 2 * ni {
        set(k, k + 1);
        set(k + 1, k);
        k += 2;
    }
    WeylElement::new(group.ty, window)
}

/// Whether an involution of `W^BC_n` lies in the type D underline domain:
/// `#negatives` and `e(w) = #{i : w(i) < -i}` have the same parity.
fn in_d_domain(w: &WeylElement) -> bool {
    let neg = w.window().iter().filter(|&&v| v < 0).count();
    let n = w.rank();
    let e = (1..=n as i32).filter(|&i| w.apply(i) < -i).count();
    neg % 2 == e % 2
}

/// Involutions of `W` (for D: the underline domain inside `W^BC_n`).
fn base_involutions(group: &GroupType) -> Vec<WeylElement> {
    match group.ty {
        CoxeterType::A | CoxeterType::BC => group.involutions(),
        CoxeterType::D => GroupType {
            ty: CoxeterType::BC,
            rank: group.rank,
        }
        .involutions()
        .into_iter()
        .filter(in_d_domain)
        .collect(),
    }
}

fn canonical_sort(items: &mut [WeylElement]) {
    items.sort_by(|a, b| (a.length(), a).cmp(&(b.length(), b)));
}

/// Vertex set via the underline bijection, in canonical order.
pub fn enumerate_by_underline(group: &GroupType) -> Vec<WeylElement> {
    let mut out: Vec<WeylElement> = base_involutions(group)
        .iter()
        .map(|w| underline(group, w).expect("domain element"))
        .collect();
    canonical_sort(&mut out);
    out
}

/// Vertex set by filtering all fixed-point-free signed involutions of rank
/// `2n` by visible descents, in canonical order.
pub fn enumerate_by_filter(group: &GroupType) -> Vec<WeylElement> {
    fn rec(ty: CoxeterType, window: &mut Vec<i32>, out: &mut Vec<WeylElement>) {
        let Some(i) = window.iter().position(|&v| v == 0) else {
            out.push(WeylElement::new(ty, window.clone()).expect("valid involution"));
            return;
        };
        let signs: &[i32] = if ty == CoxeterType::A { &[1] } else { &[1, -1] };
        for j in i + 1..window.len() {
            if window[j] != 0 {
                continue;
            }
            for &sign in signs {
                window[i] = sign * (j as i32 + 1);
                window[j] = sign * (i as i32 + 1);
                rec(ty, window, out);
                window[j] = 0;
            }
        }
        window[i] = 0;
    }
    let n = group.rank;
    // the type D parity condition is applied by `is_gelfand`
    let mut all = Vec::new();
    rec(group.ty, &mut vec![0; 2 * n], &mut all);
    let mut out: Vec<WeylElement> = all
        .into_iter()
        .filter(|z| is_gelfand(group.ty, n, z))
        .collect();
    canonical_sort(&mut out);
    out
}

/// Classification of `s` in the rank-n group acting on vertex `z`, by the
/// explicit window conditions.
pub fn classify(n: usize, z: &WeylElement, s: Generator) -> DescentClass {
    let n = n as i32;
    let v = |i: i32| z.apply(i);
    match s.0 {
        0 => {
            if v(1) < 0 {
                DescentClass::StrictDesc
            } else {
                DescentClass::StrictAsc
            }
        }
        -1 => {
            let (a, b) = (v(1), v(2));
            if a.abs() == 2 {
                DescentClass::WeakDesc
            } else if (a < -n && n < b) || (b < -n && n < a) {
                DescentClass::WeakAsc
            } else if -b > a {
                DescentClass::StrictDesc
            } else {
                DescentClass::StrictAsc
            }
        }
        i => {
            let (a, b) = (v(i), v(i + 1));
            if a.abs() == i + 1 {
                DescentClass::WeakDesc
            } else if (n < a && a < b) || (a < b && b < -n) {
                DescentClass::WeakAsc
            } else if a != i + 1 && a > b && b != i {
                DescentClass::StrictDesc
            } else {
                DescentClass::StrictAsc
            }
        }
    }
}

/// Classification straight from the definitions: commuting, conjugating to a
/// high simple generator, or comparing `ℓ(sz)` with `ℓ(z)` in rank `2n`.
pub fn classify_by_length(n: usize, z: &WeylElement, s: Generator) -> DescentClass {
    let sz = z.gen_mul(s);
    if sz == z.mul_gen(s) {
        return DescentClass::WeakDesc;
    }
    let zsz = z.mul_gen(s).mul(z);
    let high = (n as i32 + 1..2 * n as i32)
        .any(|i| zsz == z.group().identity().mul_gen(Generator(i)));
    if high {
        DescentClass::WeakAsc
    } else if sz.length() < z.length() {
        DescentClass::StrictDesc
    } else {
        DescentClass::StrictAsc
    }
}

/// `szs` for a strict ascent or descent `s` of `z`.
pub fn conjugate_by(n: usize, z: &WeylElement, s: Generator) -> Result<WeylElement> {
    if classify(n, z, s).is_weak() {
        return Err(Error::WeakMove(s.to_string(), z.to_string()));
    }
    Ok(z.conjugate_gen(s))
}

/// The type BC duality `underline(w) -> underline(-w)`.
pub fn iota_bc(group: &GroupType, z: &WeylElement) -> Result<WeylElement> {
    if group.ty == CoxeterType::A {
        return Err(Error::WrongFamily {
            expected: "BC or D".into(),
            got: group.ty.to_string(),
        });
    }
    let bc = GroupType {
        ty: CoxeterType::BC,
        rank: group.rank,
    };
    let w = base_involution(group.rank, z);
    let out = underline(&bc, &w.negated())?;
    out.retyped(z.ty())
}

/// `n + #{i in [n] : |z(i)| > n}`.
pub fn twist_count(n: usize, z: &WeylElement) -> usize {
    n + (1..=n as i32).filter(|&i| z.apply(i).abs() > n as i32).count()
}

/// Whether the type D constructions apply the `s_0` twist to `z`.
pub fn is_twisted(n: usize, z: &WeylElement) -> bool {
    !twist_count(n, z).is_multiple_of(4)
}

/// The type D duality: `iota_bc`, followed by conjugation with `s_0` unless
/// `n + #{i in [n] : |z(i)| > n}` is divisible by 4.
pub fn iota_d(group: &GroupType, z: &WeylElement) -> Result<WeylElement> {
    if group.ty != CoxeterType::D {
        return Err(Error::WrongFamily {
            expected: "D".into(),
            got: group.ty.to_string(),
        });
    }
    let y = iota_bc(group, z)?;
    Ok(if is_twisted(group.rank, z) { y.diamond() } else { y })
}

/// `#{i in [n] : |z(i)| <= n}`, which determines the model triple of `z`.
pub fn low_count(n: usize, z: &WeylElement) -> usize {
    (1..=n as i32).filter(|&i| z.apply(i).abs() <= n as i32).count()
}

/// One vertex with its cached classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GelfandVertex {
    pub z: WeylElement,
    pub classes: Vec<DescentClass>,
}

/// The vertex set of `W` in canonical order `(ℓ, window)`.
#[derive(Clone, Debug)]
pub struct GelfandSet {
    group: GroupType,
    generators: Vec<Generator>,
    vertices: Vec<GelfandVertex>,
    index: HashMap<WeylElement, usize>,
}

impl GelfandSet {
    pub fn new(group: GroupType) -> Self {
        let generators = group.generators();
        let vertices: Vec<GelfandVertex> = enumerate_by_underline(&group)
            .into_iter()
            .map(|z| GelfandVertex {
                classes: generators.iter().map(|&s| classify(group.rank, &z, s)).collect(),
                z,
            })
            .collect();
        let index = vertices.iter().enumerate().map(|(i, v)| (v.z.clone(), i)).collect();
        Self {
            group,
            generators,
            vertices,
            index,
        }
    }

    pub fn group(&self) -> &GroupType {
        &self.group
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[GelfandVertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &GelfandVertex {
        &self.vertices[i]
    }

    pub fn index_of(&self, z: &WeylElement) -> Option<usize> {
        self.index.get(z).copied()
    }

    /// Index of the generator within `generators()`.
    pub fn generator_slot(&self, s: Generator) -> Option<usize> {
        self.generators.iter().position(|&t| t == s)
    }

    pub fn class(&self, i: usize, s: Generator) -> DescentClass {
        self.vertices[i].classes[self.generator_slot(s).expect("generator of W")]
    }

    /// Index of `szs`, or `i` itself for a weak class.
    pub fn move_index(&self, i: usize, slot: usize) -> usize {
        let v = &self.vertices[i];
        if v.classes[slot].is_weak() {
            return i;
        }
        let moved = v.z.conjugate_gen(self.generators[slot]);
        self.index[&moved]
    }

    /// Index permutation induced by `iota_bc` (BC) or `iota_d` (D).
    pub fn iota_map(&self) -> Result<Vec<usize>> {
        self.vertices
            .iter()
            .map(|v| {
                let image = match self.group.ty {
                    CoxeterType::D => iota_d(&self.group, &v.z)?,
                    _ => iota_bc(&self.group, &v.z)?,
                };
                self.index_of(&image)
                    .ok_or_else(|| Error::InvalidElement(format!("iota image {image} not a vertex")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(ty: CoxeterType, n: usize) -> GroupType {
        GroupType::new(ty, n).unwrap()
    }

    fn el(ty: CoxeterType, w: &[i32]) -> WeylElement {
        WeylElement::new(ty, w.to_vec()).unwrap()
    }

    /// Window of a positive permutation given by disjoint transpositions.
    fn cycles(n: usize, pairs: &[(i32, i32)]) -> WeylElement {
        let mut w: Vec<i32> = (1..=n as i32).collect();
        for &(a, b) in pairs {
            w[a as usize - 1] = b;
            w[b as usize - 1] = a;
        }
        el(CoxeterType::A, &w)
    }

    #[test]
    fn visible_descent_examples() {
        let z = cycles(8, &[(1, 5), (2, 6), (3, 7), (4, 8)]);
        assert_eq!(visible_descents(&z), BTreeSet::from([4]));
        let z = cycles(8, &[(1, 2), (3, 4), (5, 6), (7, 8)]);
        assert!(visible_descents(&z).is_empty());
        // z(3) = 2 is not below min(2, 3), so only i = 3 qualifies
        let z = cycles(4, &[(1, 4), (2, 3)]);
        assert_eq!(visible_descents(&z), BTreeSet::from([3]));
    }

    #[test]
    fn s4_vertices_are_the_listed_ten() {
        let listed = [
            cycles(8, &[(1, 5), (2, 6), (3, 7), (4, 8)]),
            cycles(8, &[(1, 2), (3, 5), (4, 6), (7, 8)]),
            cycles(8, &[(1, 3), (2, 5), (4, 6), (7, 8)]),
            cycles(8, &[(1, 4), (2, 5), (3, 6), (7, 8)]),
            cycles(8, &[(2, 3), (1, 5), (4, 6), (7, 8)]),
            cycles(8, &[(2, 4), (1, 5), (3, 6), (7, 8)]),
            cycles(8, &[(3, 4), (1, 5), (2, 6), (7, 8)]),
            cycles(8, &[(1, 2), (3, 4), (5, 6), (7, 8)]),
            cycles(8, &[(1, 3), (2, 4), (5, 6), (7, 8)]),
            cycles(8, &[(1, 4), (2, 3), (5, 6), (7, 8)]),
        ];
        let got: BTreeSet<_> = enumerate_by_underline(&group(CoxeterType::A, 4)).into_iter().collect();
        assert_eq!(got, listed.into_iter().collect());
    }

    #[test]
    fn bc2_and_d2_vertices() {
        let bc = |w: &[i32]| el(CoxeterType::BC, w);
        let listed_bc: BTreeSet<_> = [
            bc(&[3, 4, 1, 2]),
            bc(&[-4, -3, -2, -1]),
            bc(&[-3, 4, -1, 2]),
            bc(&[4, -3, -2, 1]),
            bc(&[2, 1, 4, 3]),
            bc(&[-2, -1, 4, 3]),
        ]
        .into_iter()
        .collect();
        let got: BTreeSet<_> = enumerate_by_underline(&group(CoxeterType::BC, 2)).into_iter().collect();
        assert_eq!(got, listed_bc);
        let d = |w: &[i32]| el(CoxeterType::D, w);
        let listed_d: BTreeSet<_> = [d(&[3, 4, 1, 2]), d(&[-4, -3, -2, -1]), d(&[2, 1, 4, 3])]
            .into_iter()
            .collect();
        let got: BTreeSet<_> = enumerate_by_underline(&group(CoxeterType::D, 2)).into_iter().collect();
        assert_eq!(got, listed_d);
    }

    #[test]
    fn underline_examples() {
        let z = underline(&group(CoxeterType::A, 4), &el(CoxeterType::A, &[2, 1, 3, 4])).unwrap();
        assert_eq!(z, el(CoxeterType::A, &[2, 1, 5, 6, 3, 4, 8, 7]));
        let w = el(CoxeterType::BC, &[-3, 2, -1, -4, -5]);
        let z = underline(&group(CoxeterType::BC, 5), &w).unwrap();
        assert_eq!(z, el(CoxeterType::BC, &[-3, 8, -1, -7, -6, -5, -4, 2, 10, 9]));
        assert_eq!(base_involution(5, &z), w);
        for n in 1..5 {
            let g = group(CoxeterType::A, n);
            let z = underline(&g, &g.identity()).unwrap();
            let expect: Vec<i32> = (1..=n as i32).map(|i| i + n as i32).chain(1..=n as i32).collect();
            assert_eq!(z.window(), &expect[..]);
        }
        assert!(underline(&group(CoxeterType::A, 3), &el(CoxeterType::A, &[2, 3, 1])).is_err());
    }

    #[test]
    fn classification_examples() {
        let z = cycles(8, &[(1, 2), (3, 5), (4, 6), (7, 8)]);
        assert_eq!(classify(4, &z, Generator(1)), DescentClass::WeakDesc);
        assert_eq!(classify(4, &z, Generator(3)), DescentClass::WeakAsc);
        assert_eq!(classify(4, &z, Generator(2)), DescentClass::StrictAsc);
        assert_eq!(
            conjugate_by(4, &z, Generator(2)).unwrap(),
            cycles(8, &[(1, 3), (2, 5), (4, 6), (7, 8)])
        );
        assert!(conjugate_by(4, &z, Generator(1)).is_err());
    }

    #[test]
    fn iota_examples() {
        let bc5 = group(CoxeterType::BC, 5);
        let z = el(CoxeterType::BC, &[-3, 8, -1, -7, -6, -5, -4, 2, 10, 9]);
        assert_eq!(
            iota_bc(&bc5, &z).unwrap(),
            el(CoxeterType::BC, &[3, -6, 1, 7, 8, -2, 4, 5, 10, 9])
        );
        for n in 2..5 {
            let g = group(CoxeterType::BC, n);
            let top = underline(&g, &g.identity()).unwrap();
            assert_eq!(iota_bc(&g, &top).unwrap(), underline(&g, &g.longest_element()).unwrap());
        }
        let d5 = group(CoxeterType::D, 5);
        let z = underline(&bc5, &el(CoxeterType::BC, &[-3, 2, -1, 5, 4]))
            .unwrap()
            .retyped(CoxeterType::D)
            .unwrap();
        assert_eq!(z.window(), &[-3, 6, -1, 5, 4, 2, 8, 7, 10, 9]);
        assert_eq!(
            iota_d(&d5, &z).unwrap(),
            el(CoxeterType::D, &[-3, -6, -1, -5, -4, -2, 8, 7, 10, 9])
        );
        assert!(iota_d(&bc5, &z).is_err());
    }

    #[test]
    fn both_enumerations_agree() {
        for (ty, max) in [(CoxeterType::A, 6), (CoxeterType::BC, 4), (CoxeterType::D, 4)] {
            let lo = if ty == CoxeterType::A { 1 } else { 2 };
            for n in lo..=max {
                let g = group(ty, n);
                assert_eq!(enumerate_by_underline(&g), enumerate_by_filter(&g), "{g}");
            }
        }
    }

    #[test]
    fn normal_form_matches_visible_descents() {
        for (ty, n) in [(CoxeterType::BC, 3), (CoxeterType::A, 4)] {
            let mut all = Vec::new();
            for z in group(CoxeterType::BC, 2 * n).involutions() {
                if in_f(CoxeterType::BC, n, &z) {
                    all.push(z);
                }
            }
            for z in all {
                let zz = z.retyped(CoxeterType::BC).unwrap();
                assert_eq!(is_gelfand(CoxeterType::BC, n, &zz), has_normal_form(n, &zz), "{ty:?} {z}");
            }
        }
    }

    #[test]
    fn classification_matches_length_definition() {
        for (ty, n) in [
            (CoxeterType::A, 2),
            (CoxeterType::A, 3),
            (CoxeterType::A, 4),
            (CoxeterType::A, 5),
            (CoxeterType::BC, 2),
            (CoxeterType::BC, 3),
            (CoxeterType::BC, 4),
            (CoxeterType::D, 2),
            (CoxeterType::D, 3),
            (CoxeterType::D, 4),
        ] {
            let g = group(ty, n);
            for z in enumerate_by_underline(&g) {
                for s in g.generators() {
                    assert_eq!(classify(n, &z, s), classify_by_length(n, &z, s), "{g} {z} {s}");
                }
            }
        }
    }

    #[test]
    fn strict_moves_change_length_by_two() {
        for g in [group(CoxeterType::A, 5), group(CoxeterType::BC, 4), group(CoxeterType::D, 4)] {
            let set = GelfandSet::new(g);
            for (i, v) in set.vertices().iter().enumerate() {
                for (slot, &s) in set.generators().iter().enumerate() {
                    let c = v.classes[slot];
                    if c.is_weak() {
                        continue;
                    }
                    let j = set.move_index(i, slot);
                    let u = &set.vertex(j).z;
                    let d = u.length() as i64 - v.z.length() as i64;
                    let expect = if c == DescentClass::StrictAsc { 2 } else { -2 };
                    assert_eq!(d, expect, "{g} {} {s}", v.z);
                    assert_eq!(set.move_index(j, slot), i);
                }
            }
        }
    }

    #[test]
    fn iotas_are_involutions_and_complement_ascents() {
        use DescentClass::*;
        for g in [
            group(CoxeterType::BC, 2),
            group(CoxeterType::BC, 3),
            group(CoxeterType::BC, 4),
            group(CoxeterType::D, 3),
            group(CoxeterType::D, 4),
        ] {
            let set = GelfandSet::new(g);
            let iota = set.iota_map().unwrap();
            for (i, &j) in iota.iter().enumerate() {
                assert_eq!(iota[j], i, "{g}");
                if g.ty == CoxeterType::BC {
                    for slot in 0..set.generators().len() {
                        let asc_m = matches!(set.vertex(i).classes[slot], StrictAsc | WeakAsc);
                        let asc_n = matches!(set.vertex(j).classes[slot], StrictAsc | WeakDesc);
                        assert_ne!(asc_m, asc_n, "{g} {}", set.vertex(i).z);
                    }
                }
            }
        }
    }

    #[test]
    fn vertex_counts_are_involution_counts() {
        let a: Vec<usize> = (2..=8).map(|n| GelfandSet::new(group(CoxeterType::A, n)).len()).collect();
        assert_eq!(a, vec![2, 4, 10, 26, 76, 232, 764]);
        let bc: Vec<usize> = (2..=5).map(|n| GelfandSet::new(group(CoxeterType::BC, n)).len()).collect();
        assert_eq!(bc, vec![6, 20, 76, 312]);
        let d: Vec<usize> = (2..=6).map(|n| GelfandSet::new(group(CoxeterType::D, n)).len()).collect();
        assert_eq!(d, vec![3, 10, 38, 156, 692]);
        for n in 2..=4 {
            let g = group(CoxeterType::BC, n);
            assert_eq!(GelfandSet::new(g).len() as u64, g.square_root_count(&g.identity()).unwrap());
        }
    }
}
