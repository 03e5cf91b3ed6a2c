//! The classical Weyl groups `S_n`, `W^BC_n` and `W^D_n` realised as signed
//! permutations of `{±1, ..., ±n}`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterType {
    A,
    BC,
    D,
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoxeterType::A => "A",
            CoxeterType::BC => "BC",
            CoxeterType::D => "D",
        })
    }
}

impl FromStr for CoxeterType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(CoxeterType::A),
            "bc" | "b" | "c" => Ok(CoxeterType::BC),
            "d" => Ok(CoxeterType::D),
            _ => Err(Error::Parse(format!("unknown type {s:?}"))),
        }
    }
}

/// A simple generator `s_i`. Index `-1` exists only in type D and `0` only in
/// type BC.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(pub i32);

impl Generator {
    pub fn index(self) -> i32 {
        self.0
    }

    /// Image under the diagram automorphism exchanging `s_-1` and `s_1`.
    pub fn diamond(self) -> Generator {
        match self.0 {
            -1 => Generator(1),
            1 => Generator(-1),
            i => Generator(i),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix('s')
            .and_then(|t| t.parse().ok())
            .map(Generator)
            .ok_or_else(|| Error::Parse(format!("bad generator {s:?}")))
    }
}

/// A classical Weyl group: `S_n` (type A, rank n), `W^BC_n` or `W^D_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupType {
    pub ty: CoxeterType,
    pub rank: usize,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ty {
            CoxeterType::A => write!(f, "S_{}", self.rank),
            t => write!(f, "{t}_{}", self.rank),
        }
    }
}

impl GroupType {
    pub fn new(ty: CoxeterType, rank: usize) -> Result<Self> {
        let min = match ty {
            CoxeterType::A => 1,
            CoxeterType::BC | CoxeterType::D => 2,
        };
        if rank < min || rank > 64 {
            return Err(Error::InvalidGroup(format!("{ty} with rank {rank}")));
        }
        Ok(Self { ty, rank })
    }

    /// Same family, twice the rank: the ambient group of the Gelfand vertices.
    pub fn doubled(&self) -> GroupType {
        GroupType {
            ty: self.ty,
            rank: 2 * self.rank,
        }
    }

    pub fn generators(&self) -> Vec<Generator> {
        let first = match self.ty {
            CoxeterType::A => 1,
            CoxeterType::BC => 0,
            CoxeterType::D => -1,
        };
        (first..self.rank as i32)
            .filter(|&i| !(self.ty == CoxeterType::D && i == 0))
            .map(Generator)
            .collect()
    }

    pub fn has_generator(&self, s: Generator) -> bool {
        let i = s.0;
        match self.ty {
            CoxeterType::A => i >= 1 && i < self.rank as i32,
            CoxeterType::BC => i >= 0 && i < self.rank as i32,
            CoxeterType::D => (i == -1 || i >= 1) && i < self.rank as i32,
        }
    }

    fn require_generator(&self, s: Generator) -> Result<()> {
        if self.has_generator(s) {
            Ok(())
        } else {
            Err(Error::InvalidGenerator(s.to_string(), self.to_string()))
        }
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.ty, self.rank)
    }

    pub fn generator(&self, s: Generator) -> Result<WeylElement> {
        self.require_generator(s)?;
        Ok(self.identity().mul_gen(s))
    }

    /// Product of a word of generators, read left to right.
    pub fn from_word(&self, word: &[Generator]) -> Result<WeylElement> {
        let mut w = self.identity();
        for &s in word {
            self.require_generator(s)?;
            w = w.mul_gen(s);
        }
        Ok(w)
    }

    pub fn order(&self) -> u64 {
        let n = self.rank as u64;
        let fact: u64 = (1..=n).product();
        match self.ty {
            CoxeterType::A => fact,
            CoxeterType::BC => fact << n,
            CoxeterType::D => fact << (n - 1),
        }
    }

    /// Order of `st` read off the Coxeter diagram.
    pub fn coxeter_order(&self, s: Generator, t: Generator) -> usize {
        let (a, b) = if s.0 <= t.0 { (s.0, t.0) } else { (t.0, s.0) };
        if a == b {
            return 1;
        }
        match (self.ty, a, b) {
            (CoxeterType::BC, 0, 1) => 4,
            (CoxeterType::D, -1, 2) => 3,
            (CoxeterType::D, -1, _) => 2,
            _ if b - a == 1 => 3,
            _ => 2,
        }
    }

    /// All elements, ordered lexicographically by window.
    pub fn elements(&self) -> Vec<WeylElement> {
        let n = self.rank;
        let mut out = Vec::with_capacity(self.order() as usize);
        for perm in (1..=n as i32).permutations(n) {
            match self.ty {
                CoxeterType::A => out.push(WeylElement::raw(self.ty, perm)),
                CoxeterType::BC | CoxeterType::D => {
                    for mask in 0u64..(1 << n) {
                        if self.ty == CoxeterType::D && mask.count_ones() % 2 == 1 {
                            continue;
                        }
                        let window = perm
                            .iter()
                            .enumerate()
                            .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                            .collect();
                        out.push(WeylElement::raw(self.ty, window));
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// All involutions, by recursive pairing of the smallest free position.
    pub fn involutions(&self) -> Vec<WeylElement> {
        fn rec(
            ty: CoxeterType,
            window: &mut Vec<i32>,
            out: &mut Vec<WeylElement>,
        ) {
            let Some(i) = window.iter().position(|&v| v == 0) else {
                let negatives = window.iter().filter(|&&v| v < 0).count();
                if ty != CoxeterType::D || negatives % 2 == 0 {
                    out.push(WeylElement::raw(ty, window.clone()));
                }
                return;
            };
            let pos = i as i32 + 1;
            let signs: &[i32] = if ty == CoxeterType::A { &[1] } else { &[1, -1] };
            for &sign in signs {
                window[i] = sign * pos;
                rec(ty, window, out);
            }
            for j in i + 1..window.len() {
                if window[j] != 0 {
                    continue;
                }
                let pj = j as i32 + 1;
                for &sign in signs {
                    window[i] = sign * pj;
                    window[j] = sign * pos;
                    rec(ty, window, out);
                    window[j] = 0;
                }
            }
            window[i] = 0;
        }
        let mut out = Vec::new();
        rec(self.ty, &mut vec![0; self.rank], &mut out);
        out.sort();
        out
    }

    pub fn longest_element(&self) -> WeylElement {
        let n = self.rank as i32;
        let window = match self.ty {
            CoxeterType::A => (1..=n).rev().collect(),
            CoxeterType::BC => (1..=n).map(|i| -i).collect(),
            CoxeterType::D if n % 2 == 0 => (1..=n).map(|i| -i).collect(),
            CoxeterType::D => (1..=n).map(|i| if i == 1 { 1 } else { -i }).collect(),
        };
        WeylElement::raw(self.ty, window)
    }

    /// Number of square roots of each element, by brute force.
    pub fn square_counts(&self) -> Result<HashMap<WeylElement, u64>> {
        if self.order() > SQUARE_ROOT_LIMIT {
            return Err(Error::RankCap {
                group: self.to_string(),
                cap: self.rank - 1,
            });
        }
        let mut counts = HashMap::new();
        for u in self.elements() {
            *counts.entry(u.mul(&u)).or_insert(0) += 1;
        }
        Ok(counts)
    }

    /// `#{u : u^2 = w}`.
    pub fn square_root_count(&self, w: &WeylElement) -> Result<u64> {
        self.require_member(w)?;
        Ok(self.square_counts()?.get(w).copied().unwrap_or(0))
    }

    /// Conjugacy classes, each sorted, ordered by their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<WeylElement>> {
        let gens = self.generators();
        let mut seen = HashSet::new();
        let mut classes = Vec::new();
        for w in self.elements() {
            if seen.contains(&w) {
                continue;
            }
            let mut class = vec![w.clone()];
            seen.insert(w.clone());
            let mut queue = VecDeque::from([w]);
            while let Some(u) = queue.pop_front() {
                for &s in &gens {
                    let v = u.conjugate_gen(s);
                    if seen.insert(v.clone()) {
                        class.push(v.clone());
                        queue.push_back(v);
                    }
                }
            }
            class.sort();
            classes.push(class);
        }
        classes
    }

    pub fn require_member(&self, w: &WeylElement) -> Result<()> {
        if w.ty != self.ty || w.rank() != self.rank {
            return Err(Error::GroupMismatch(w.group().to_string(), self.to_string()));
        }
        Ok(())
    }
}

/// Largest group order accepted by the brute-force square-root counter.
pub const SQUARE_ROOT_LIMIT: u64 = 100_000;

/// A signed permutation, stored by its window `(w(1), ..., w(N))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    ty: CoxeterType,
    window: Vec<i32>,
}

impl WeylElement {
    fn raw(ty: CoxeterType, window: Vec<i32>) -> Self {
        Self { ty, window }
    }

    pub fn new(ty: CoxeterType, window: Vec<i32>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::InvalidElement(format!("{window:?}")));
            }
            seen[a] = true;
        }
        let negatives = window.iter().filter(|&&v| v < 0).count();
        let ok = match ty {
            CoxeterType::A => negatives == 0,
            CoxeterType::BC => true,
            CoxeterType::D => negatives % 2 == 0,
        };
        if !ok || n == 0 {
            return Err(Error::InvalidElement(format!("{window:?} in type {ty}")));
        }
        Ok(Self { ty, window })
    }

    /// Parses comma-separated one-line notation such as `-3,2,-1`.
    pub fn parse(ty: CoxeterType, text: &str) -> Result<Self> {
        let window = text
            .split(',')
            .map(|t| t.trim().parse::<i32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad one-line word {text:?}")))?;
        Self::new(ty, window)
    }

    pub fn identity(ty: CoxeterType, n: usize) -> Self {
        Self::raw(ty, (1..=n as i32).collect())
    }

    pub fn ty(&self) -> CoxeterType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn group(&self) -> GroupType {
        GroupType {
            ty: self.ty,
            rank: self.rank(),
        }
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    /// Same window regarded in another family, if it is a member there.
    pub fn retyped(&self, ty: CoxeterType) -> Result<Self> {
        Self::new(ty, self.window.clone())
    }

    /// `w(i)` for any nonzero `i` in `[±N]`.
    #[inline]
    pub fn apply(&self, i: i32) -> i32 {
        if i > 0 {
            self.window[i as usize - 1]
        } else {
            -self.window[(-i) as usize - 1]
        }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &v)| v == i as i32 + 1)
    }

    /// `(u∘v)(i) = u(v(i))`.
    pub fn compose(&self, other: &WeylElement) -> Result<WeylElement> {
        if self.group() != other.group() {
            return Err(Error::GroupMismatch(
                self.group().to_string(),
                other.group().to_string(),
            ));
        }
        Ok(self.mul(other))
    }

    /// Unchecked composition `self ∘ other`.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        debug_assert_eq!(self.rank(), other.rank());
        Self::raw(
            self.ty,
            other.window.iter().map(|&v| self.apply(v)).collect(),
        )
    }

    pub fn inverse(&self) -> WeylElement {
        let mut window = vec![0; self.rank()];
        for (i, &v) in self.window.iter().enumerate() {
            let pos = i as i32 + 1;
            window[v.unsigned_abs() as usize - 1] = if v > 0 { pos } else { -pos };
        }
        Self::raw(self.ty, window)
    }

    pub fn is_involution(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, &v)| self.apply(v) == i as i32 + 1)
    }

    /// `-w`, the product with the central element `-1`.
    pub fn negated(&self) -> WeylElement {
        Self::raw(self.ty, self.window.iter().map(|v| -v).collect())
    }

    /// Coxeter length via window statistics.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut inv = 0;
        let mut nsp = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
                if w[i] + w[j] < 0 {
                    nsp += 1;
                }
            }
        }
        let neg = w.iter().filter(|&&v| v < 0).count();
        match self.ty {
            CoxeterType::A => inv,
            CoxeterType::BC => inv + nsp + neg,
            CoxeterType::D => inv + nsp,
        }
    }

    /// Whether `ℓ(ws) < ℓ(w)`.
    #[inline]
    pub fn has_right_descent(&self, s: Generator) -> bool {
        let w = &self.window;
        match s.0 {
            -1 => w[0] + w[1] < 0,
            0 => w[0] < 0,
            i => w[i as usize - 1] > w[i as usize],
        }
    }

    /// Whether `ℓ(sw) < ℓ(w)`.
    pub fn has_left_descent(&self, s: Generator) -> bool {
        self.inverse().has_right_descent(s)
    }

    pub fn right_descents(&self) -> Vec<Generator> {
        self.group()
            .generators()
            .into_iter()
            .filter(|&s| self.has_right_descent(s))
            .collect()
    }

    pub fn left_descents(&self) -> Vec<Generator> {
        self.inverse().right_descents()
    }

    /// `w·s`, acting on positions.
    pub fn mul_gen(&self, s: Generator) -> WeylElement {
        let mut w = self.window.clone();
        match s.0 {
            -1 => {
                let (a, b) = (w[0], w[1]);
                w[0] = -b;
                w[1] = -a;
            }
            0 => w[0] = -w[0],
            i => w.swap(i as usize - 1, i as usize),
        }
        Self::raw(self.ty, w)
    }

    /// `s·w`, acting on values.
    pub fn gen_mul(&self, s: Generator) -> WeylElement {
        let map = |v: i32| -> i32 {
            let (a, sign) = (v.abs(), v.signum());
            sign * match s.0 {
                -1 if a == 1 => -2,
                -1 if a == 2 => -1,
                0 if a == 1 => -1,
                i if i > 0 && a == i => i + 1,
                i if i > 0 && a == i + 1 => i,
                _ => a,
            }
        };
        Self::raw(self.ty, self.window.iter().map(|&v| map(v)).collect())
    }

    /// `s·w·s`.
    pub fn conjugate_gen(&self, s: Generator) -> WeylElement {
        self.gen_mul(s).mul_gen(s)
    }

    /// A reduced word, found by repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self) -> Vec<Generator> {
        let gens = self.group().generators();
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        while let Some(&s) = gens.iter().find(|&&s| w.has_right_descent(s)) {
            word.push(s);
            w = w.mul_gen(s);
        }
        word.reverse();
        word
    }

    /// Conjugation by `s_0 = (-1, 1)`, the automorphism exchanging `s_-1` and `s_1`.
    pub fn diamond(&self) -> WeylElement {
        let flip = |v: i32| if v.abs() == 1 { -v } else { v };
        let mut window: Vec<i32> = self.window.iter().map(|&v| flip(v)).collect();
        window[0] = -window[0];
        Self::raw(self.ty, window)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.window.iter().join(","))
    }
}
