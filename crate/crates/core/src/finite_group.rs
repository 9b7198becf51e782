//! Finite groups as multiplication tables, and the brute-force
//! twisted-conjugacy oracle.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{inverse_unimodular, AbelianAuto, FGAbelianGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteGroupError {
    #[error("table is not square or has out-of-range entries")]
    MalformedTable,
    #[error("table does not define a group: {0}")]
    NotAGroup(&'static str),
    #[error("order {0} exceeds the limit {1}")]
    TooLarge(usize, usize),
    #[error("map is not a bijection of the group")]
    NotBijective,
    #[error("map is not a homomorphism: f({a}·{b}) != f({a})·f({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("bad CSV at line {line}: {msg}")]
    Csv { line: usize, msg: String },
}

pub const MAX_ORDER: usize = 10_000;

/// A finite group on the elements `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a full table, checking the group axioms.
    /// Associativity is checked on all triples only for orders up to 200;
    /// above that, on triples drawn from a generating set.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self, FiniteGroupError> {
        if order == 0 || table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(FiniteGroupError::MalformedTable);
        }
        if order > MAX_ORDER {
            return Err(FiniteGroupError::TooLarge(order, MAX_ORDER));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or(FiniteGroupError::NotAGroup("no identity"))?;
        let mut inverses = vec![usize::MAX; order];
        for a in 0..order {
            // Latin-square rows give unique solutions.
            let row = &table[a * order..(a + 1) * order];
            let mut seen = vec![false; order];
            for &x in row {
                if std::mem::replace(&mut seen[x], true) {
                    return Err(FiniteGroupError::NotAGroup("row is not a permutation"));
                }
            }
            inverses[a] = (0..order).find(|&b| mul(a, b) == identity).expect("row is a permutation");
            if mul(inverses[a], a) != identity {
                return Err(FiniteGroupError::NotAGroup("left and right inverses differ"));
            }
        }
        let group = FiniteGroup { order, table, identity, inverses };
        let sample: Vec<usize> = if order <= 200 { (0..order).collect() } else { group.generating_set() };
        for &a in &sample {
            for &b in &sample {
                for c in 0..order {
                    if group.mul(group.mul(a, b), c) != group.mul(a, group.mul(b, c)) {
                        return Err(FiniteGroupError::NotAGroup("not associative"));
                    }
                }
            }
        }
        Ok(group)
    }

    /// Closes `generators` under `mul` and tabulates the result.
    pub fn generate<T, F>(identity: T, generators: &[T], mul: F) -> Self
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        Self::generate_labeled(identity, generators, mul).0
    }

    /// As [`FiniteGroup::generate`], also returning the element behind each index.
    pub fn generate_labeled<T, F>(identity: T, generators: &[T], mul: F) -> (Self, Vec<T>)
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let p = mul(&elements[i], g);
                if !index.contains_key(&p) {
                    assert!(elements.len() < MAX_ORDER, "generated group exceeds {MAX_ORDER} elements");
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&mul(&elements[a], &elements[b])];
            }
        }
        let inverses = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("finite monoid of units")).collect();
        (FiniteGroup { order: n, table, identity: 0, inverses }, elements)
    }

    /// Parses a CSV multiplication table: row `a`, column `b` holds `a·b`.
    pub fn from_csv(text: &str) -> Result<Self, FiniteGroupError> {
        let mut table = Vec::new();
        let mut order = None;
        for (line_no, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let row: Result<Vec<usize>, _> = line.split(',').map(|c| c.trim().parse::<usize>()).collect();
            let row = row.map_err(|e| FiniteGroupError::Csv { line: line_no + 1, msg: e.to_string() })?;
            if *order.get_or_insert(row.len()) != row.len() {
                return Err(FiniteGroupError::Csv { line: line_no + 1, msg: "row length differs".into() });
            }
            table.extend(row);
        }
        let order = order.ok_or(FiniteGroupError::MalformedTable)?;
        Self::from_table(order, table)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::generate(0usize, &[1 % n], |a, b| (a + b) % n)
    }

    /// `⟨a, b | a^m, b^n = a^t, b a b⁻¹ = a^r⟩`, elements `a^i b^j`.
    /// The caller supplies parameters that define a group of order `m·n`.
    pub fn metacyclic(m: u64, n: u64, r: u64, t: u64) -> Self {
        let mul = move |&(i, j): &(u64, u64), &(k, l): &(u64, u64)| {
            let twist = (0..j).fold(k % m, |acc, _| acc * r % m);
            let mut a = (i + twist) % m;
            let mut b = j + l;
            if b >= n {
                b -= n;
                a = (a + t) % m;
            }
            (a, b)
        };
        let g = Self::generate((0, 0), &[(1 % m, 0), (0, 1 % n)], mul);
        assert_eq!(g.order() as u64, m * n, "metacyclic parameters do not define a group of order m·n");
        g
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let gens: Vec<(usize, usize)> = self
            .generating_set()
            .into_iter()
            .map(|g| (g, other.identity))
            .chain(other.generating_set().into_iter().map(|h| (self.identity, h)))
            .collect();
        Self::generate((self.identity, other.identity), &gens, |&(a, b), &(c, d)| (self.mul(a, c), other.mul(b, d)))
    }

    /// The group generated by the given permutations of `0..k`.
    pub fn permutations(generators: &[Vec<usize>]) -> Self {
        let k = generators.first().map_or(0, Vec::len);
        let id: Vec<usize> = (0..k).collect();
        Self::generate(id, generators, |p, q| q.iter().map(|&i| p[i]).collect())
    }

    /// `(Z/4 × Z/2) ⋊ Z/2` with the order-two automorphism `act`.
    fn c4c2_by_c2(act: fn(u8, u8) -> (u8, u8)) -> Self {
        let mul = move |&(i, j, s): &(u8, u8, u8), &(k, l, u): &(u8, u8, u8)| {
            let (k, l) = if s == 1 { act(k, l) } else { (k, l) };
            ((i + k) % 4, (j + l) % 2, (s + u) % 2)
        };
        Self::generate((0, 0, 0), &[(1, 0, 0), (0, 1, 0), (0, 0, 1)], mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The subgroup generated by `gens`, as a membership mask.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        inside
    }

    /// A greedy generating set, preferring elements of large order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order).collect();
        by_order.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        let mut gens = Vec::new();
        let mut inside = self.closure(&gens);
        for a in by_order {
            if !inside[a] {
                gens.push(a);
                inside = self.closure(&gens);
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// An isomorphism-invariant fingerprint used to certify that corpus
    /// entries are pairwise distinct.
    pub fn signature(&self) -> Vec<usize> {
        let mut profile: Vec<(usize, usize)> = (0..self.order)
            .map(|a| {
                let centralizer = (0..self.order).filter(|&b| self.mul(a, b) == self.mul(b, a)).count();
                (self.element_order(a), centralizer)
            })
            .collect();
        profile.sort_unstable();
        let commutators: Vec<usize> =
            (0..self.order).flat_map(|a| (0..self.order).map(move |b| (a, b))).map(|(a, b)| self.commutator(a, b)).collect();
        let derived = self.closure(&commutators).iter().filter(|&&x| x).count();
        let mut squares = vec![false; self.order];
        for a in 0..self.order {
            squares[self.mul(a, a)] = true;
        }
        let mut sig = vec![self.order, derived, squares.iter().filter(|&&x| x).count()];
        sig.extend(profile.into_iter().flat_map(|(o, c)| [o, c]));
        sig
    }

    /// Checks that `map` is an automorphism. Homomorphism is verified on
    /// `g·a` for generators `g` and all `a`, which suffices.
    pub fn check_automorphism(&self, map: &[usize]) -> Result<(), FiniteGroupError> {
        if map.len() != self.order {
            return Err(FiniteGroupError::NotBijective);
        }
        let mut hit = vec![false; self.order];
        for &x in map {
            if x >= self.order || std::mem::replace(&mut hit[x], true) {
                return Err(FiniteGroupError::NotBijective);
            }
        }
        for g in self.generating_set() {
            for a in 0..self.order {
                if map[self.mul(g, a)] != self.mul(map[g], map[a]) {
                    return Err(FiniteGroupError::NotHomomorphism { a: g, b: a });
                }
            }
        }
        Ok(())
    }

    /// Every automorphism, as permutations of the elements.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let gens = self.generating_set();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..self.order).filter(|&x| self.element_order(x) == o).collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cand)| cand[c]).collect();
            if let Some(map) = self.extend(&gens, &images) {
                out.push(map);
            }
            // Odometer over candidate images.
            let mut k = 0;
            loop {
                if k == gens.len() {
                    return out;
                }
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    /// Extends `gens[i] ↦ images[i]` to an automorphism, if one exists.
    pub fn extend(&self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.order];
        let mut used = vec![false; self.order];
        map[self.identity] = self.identity;
        used[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = self.mul(map[x], h);
                if map[y] == usize::MAX {
                    if std::mem::replace(&mut used[fy], true) {
                        return None;
                    }
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        // Every Cayley edge is consistent, so map is a homomorphism; it is
        // injective by construction and defined everywhere since gens generate.
        Some(map)
    }

    pub fn fixed_points(&self, phi: &[usize]) -> Vec<usize> {
        (0..self.order).filter(|&a| phi[a] == a).collect()
    }

    /// Orbits of `a ↦ g·a·φ(g)⁻¹`.
    pub fn twisted_classes(&self, phi: &[usize]) -> Result<TwistedClasses, FiniteGroupError> {
        self.check_automorphism(phi)?;
        let gens = self.generating_set();
        let mut uf = UnionFind::new(self.order);
        for &g in &gens {
            let back = self.inv(phi[g]);
            for a in 0..self.order {
                uf.union(a, self.mul(self.mul(g, a), back));
            }
        }
        Ok(TwistedClasses::from_union_find(&mut uf))
    }

    /// Subgroup membership masks that are φ-invariant.
    pub fn is_invariant(&self, phi: &[usize], subgroup: &[usize]) -> bool {
        let mut inside = vec![false; self.order];
        for &x in subgroup {
            inside[x] = true;
        }
        subgroup.iter().all(|&x| inside[phi[x]])
    }

    /// Normal subgroups, as sorted element lists.
    pub fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        let normal_closure = |seed: &[usize]| -> Vec<bool> {
            let mut gens: Vec<usize> = Vec::new();
            for &s in seed {
                for g in 0..self.order {
                    gens.push(self.mul(self.mul(g, s), self.inv(g)));
                }
            }
            gens.sort_unstable();
            gens.dedup();
            self.closure(&gens)
        };
        let mut found: Vec<Vec<bool>> = vec![self.closure(&[])];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for a in 0..self.order {
                if found[i][a] {
                    continue;
                }
                let mut seed: Vec<usize> = (0..self.order).filter(|&x| found[i][x]).collect();
                seed.push(a);
                let n = normal_closure(&seed);
                if !found.contains(&n) {
                    found.push(n);
                    queue.push_back(found.len() - 1);
                }
            }
        }
        let mut out: Vec<Vec<usize>> =
            found.into_iter().map(|mask| (0..self.order).filter(|&x| mask[x]).collect()).collect();
        out.sort();
        out
    }

    /// Twisted classes of the map induced on `G/N`, for a φ-invariant
    /// normal subgroup `N`. Returns `None` if `N` is not φ-invariant.
    pub fn quotient_twisted_count(&self, phi: &[usize], normal: &[usize]) -> Option<usize> {
        let mut in_n = vec![false; self.order];
        for &x in normal {
            in_n[x] = true;
        }
        if normal.iter().any(|&x| !in_n[phi[x]]) {
            return None;
        }
        let mut uf = UnionFind::new(self.order);
        for a in 0..self.order {
            for &n in normal {
                uf.union(a, self.mul(a, n));
            }
        }
        for g in self.generating_set() {
            let back = self.inv(phi[g]);
            for a in 0..self.order {
                uf.union(a, self.mul(self.mul(g, a), back));
            }
        }
        Some(TwistedClasses::from_union_find(&mut uf).count())
    }
}

/// A finite abelian group as a multiplication table, with elements in
/// canonical coordinates (see [`FGAbelianGroup::normalize`]).
#[derive(Debug, Clone)]
pub struct AbelianModel {
    pub group: FiniteGroup,
    pub elements: Vec<Vec<BigInt>>,
    index: HashMap<Vec<BigInt>, usize>,
}

impl AbelianModel {
    /// `None` if the group is infinite or larger than [`MAX_ORDER`].
    pub fn new(group: &FGAbelianGroup) -> Option<Self> {
        let order = group.order().finite()?.to_usize()?;
        if order > MAX_ORDER {
            return None;
        }
        let n = group.generators();
        let zero = vec![BigInt::zero(); n];
        let gens: Vec<Vec<BigInt>> = (0..n)
            .map(|j| {
                let mut e = zero.clone();
                e[j] = BigInt::from(1);
                group.normalize(&e)
            })
            .collect();
        let add = |a: &Vec<BigInt>, b: &Vec<BigInt>| group.reduce_canonical(a.iter().zip(b).map(|(x, y)| x + y).collect());
        let (table, elements) = FiniteGroup::generate_labeled(zero, &gens, add);
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Some(AbelianModel { group: table, elements, index })
    }

    /// The automorphism as a permutation of element indices. `auto` must
    /// act on the group this model was built from.
    pub fn permutation(&self, auto: &AbelianAuto) -> Vec<usize> {
        let group = auto.group();
        let u_inv = inverse_unimodular(&group.smith().u).expect("U is unimodular");
        self.elements.iter().map(|y| self.index[&group.normalize(&auto.apply(&u_inv.mul_vec(y)))]).collect()
    }
}

/// Tallies of the finite checks relating fixed points and twisted classes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TwistedAudit {
    pub groups: usize,
    pub automorphisms: usize,
    /// Automorphisms where `R = 1` and `|Fix| = 1` disagree.
    pub single_class_mismatches: Vec<String>,
    /// `(φ, N)` pairs checked for `R(φ) ≥ R(φ̄)`.
    pub quotient_pairs: usize,
    pub quotient_violations: Vec<String>,
}

impl TwistedAudit {
    pub fn passed(&self) -> bool {
        self.single_class_mismatches.is_empty() && self.quotient_violations.is_empty()
    }

    fn merge(mut self, other: TwistedAudit) -> TwistedAudit {
        self.groups += other.groups;
        self.automorphisms += other.automorphisms;
        self.single_class_mismatches.extend(other.single_class_mismatches);
        self.quotient_pairs += other.quotient_pairs;
        self.quotient_violations.extend(other.quotient_violations);
        self
    }
}

/// For every automorphism of `group`: `R(φ) = 1 ⟺ |Fix(φ)| = 1`, and
/// `R(φ) ≥ R(φ̄)` for every φ-invariant normal subgroup.
pub fn audit_group(name: &str, group: &FiniteGroup) -> TwistedAudit {
    let normals = group.normal_subgroups();
    let autos = group.automorphisms();
    let per_auto = |phi: &Vec<usize>| {
        let mut audit = TwistedAudit { automorphisms: 1, ..Default::default() };
        let r = group.twisted_classes(phi).expect("enumerated automorphism").count();
        let fix = group.fixed_points(phi).len();
        if (r == 1) != (fix == 1) {
            audit.single_class_mismatches.push(format!("{name}: R = {r}, |Fix| = {fix}"));
        }
        for n in normals.iter().filter(|n| group.is_invariant(phi, n)) {
            audit.quotient_pairs += 1;
            let rq = group.quotient_twisted_count(phi, n).expect("invariant");
            if rq > r {
                audit.quotient_violations.push(format!("{name}: |N| = {}, R = {r} < R(quotient) = {rq}", n.len()));
            }
        }
        audit
    };
    let audit = autos.par_iter().map(per_auto).reduce(TwistedAudit::default, TwistedAudit::merge);
    TwistedAudit { groups: 1, ..audit }
}

/// [`audit_group`] over every group of order at most 16.
pub fn audit_small_groups() -> TwistedAudit {
    small_groups().iter().map(|(name, g)| audit_group(name, g)).fold(TwistedAudit::default(), TwistedAudit::merge)
}

/// Twisted conjugacy classes, each sorted, listed by smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedClasses {
    pub classes: Vec<Vec<usize>>,
}

impl TwistedClasses {
    fn from_union_find(uf: &mut UnionFind) -> Self {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for a in 0..uf.parent.len() {
            by_root.entry(uf.find(a)).or_default().push(a);
        }
        let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
        classes.sort();
        TwistedClasses { classes }
    }

    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// One representative of every isomorphism class of groups of order at
/// most 16, with conventional names.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    let c = FiniteGroup::cyclic;
    let x = |a: FiniteGroup, b: FiniteGroup| a.direct_product(&b);
    let d8 = FiniteGroup::metacyclic(4, 2, 3, 0);
    let q8 = FiniteGroup::metacyclic(4, 2, 3, 2);
    let a4 = FiniteGroup::permutations(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]);
    vec![
        ("1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", x(c(2), c(2))),
        ("C5", c(5)),
        ("C6", c(6)),
        ("S3", FiniteGroup::metacyclic(3, 2, 2, 0)),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C4xC2", x(c(4), c(2))),
        ("C2^3", x(x(c(2), c(2)), c(2))),
        ("D8", d8.clone()),
        ("Q8", q8.clone()),
        ("C9", c(9)),
        ("C3xC3", x(c(3), c(3))),
        ("C10", c(10)),
        ("D10", FiniteGroup::metacyclic(5, 2, 4, 0)),
        ("C11", c(11)),
        ("C12", c(12)),
        ("C6xC2", x(c(6), c(2))),
        ("D12", FiniteGroup::metacyclic(6, 2, 5, 0)),
        ("Dic12", FiniteGroup::metacyclic(6, 2, 5, 3)),
        ("A4", a4),
        ("C13", c(13)),
        ("C14", c(14)),
        ("D14", FiniteGroup::metacyclic(7, 2, 6, 0)),
        ("C15", c(15)),
        ("C16", c(16)),
        ("C4xC4", x(c(4), c(4))),
        ("(C4xC2):C2", FiniteGroup::c4c2_by_c2(|i, j| (i, (j + i) % 2))),
        ("C4:C4", FiniteGroup::metacyclic(4, 4, 3, 0)),
        ("C8xC2", x(c(8), c(2))),
        ("M16", FiniteGroup::metacyclic(8, 2, 5, 0)),
        ("D16", FiniteGroup::metacyclic(8, 2, 7, 0)),
        ("SD16", FiniteGroup::metacyclic(8, 2, 3, 0)),
        ("Q16", FiniteGroup::metacyclic(8, 2, 7, 4)),
        ("C4xC2xC2", x(x(c(4), c(2)), c(2))),
        ("C2xD8", x(c(2), d8)),
        ("C2xQ8", x(c(2), q8)),
        ("C4oD8", FiniteGroup::c4c2_by_c2(|i, j| ((i + 2 * j) % 4, j))),
        ("C2^4", x(x(c(2), c(2)), x(c(2), c(2)))),
    ]
}

/// Number of groups of each order up to 16, for checking the corpus.
pub const SMALL_GROUP_COUNTS: [usize; 17] = [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_complete_and_distinct() {
        let groups = small_groups();
        assert_eq!(groups.len(), 42);
        for n in 1..=16 {
            assert_eq!(groups.iter().filter(|(_, g)| g.order() == n).count(), SMALL_GROUP_COUNTS[n], "order {n}");
        }
        let mut sigs: Vec<Vec<usize>> = groups.iter().map(|(_, g)| g.signature()).collect();
        sigs.sort();
        sigs.dedup();
        assert_eq!(sigs.len(), 42, "two corpus entries share a signature");
    }

    #[test]
    fn automorphism_counts() {
        let count = |g: &FiniteGroup| g.automorphisms().len();
        assert_eq!(count(&FiniteGroup::cyclic(1)), 1);
        assert_eq!(count(&FiniteGroup::cyclic(12)), 4);
        assert_eq!(count(&FiniteGroup::metacyclic(3, 2, 2, 0)), 6);
        assert_eq!(count(&FiniteGroup::metacyclic(4, 2, 3, 2)), 24);
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert_eq!(count(&v4), 6);
    }

    #[test]
    fn twisted_classes_basic() {
        let trivial = FiniteGroup::cyclic(1);
        assert_eq!(trivial.twisted_classes(&[0]).unwrap().count(), 1);
        let c5 = FiniteGroup::cyclic(5);
        let id: Vec<usize> = (0..5).collect();
        assert_eq!(c5.twisted_classes(&id).unwrap().count(), 5);
        let s3 = FiniteGroup::metacyclic(3, 2, 2, 0);
        let id: Vec<usize> = (0..6).collect();
        assert_eq!(s3.twisted_classes(&id).unwrap().count(), 3);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let c4 = FiniteGroup::cyclic(4);
        assert_eq!(c4.check_automorphism(&[0, 0, 1, 2]), Err(FiniteGroupError::NotBijective));
        assert!(matches!(c4.twisted_classes(&[0, 2, 1, 3]), Err(FiniteGroupError::NotHomomorphism { .. })));
    }

    #[test]
    fn csv_round_trip() {
        let csv = "0,1,2\n1,2,0\n2,0,1\n";
        let g = FiniteGroup::from_csv(csv).unwrap();
        assert_eq!(g.order(), 3);
        assert!(FiniteGroup::from_csv("0,1\n0,1\n").is_err());
        assert!(matches!(FiniteGroup::from_csv("0,x\n"), Err(FiniteGroupError::Csv { line: 1, .. })));
    }

    #[test]
    fn abelian_model_matches_coker_formula() {
        use crate::abelian::{FGAbelianGroup, IntMatrix};
        let g = FGAbelianGroup::from_moduli(&[BigInt::from(2), BigInt::from(4)]);
        let auto = AbelianAuto::new(g, IntMatrix::from_rows(&[vec![1, 1], vec![2, 3]])).unwrap();
        let model = AbelianModel::new(auto.group()).unwrap();
        let (fg, phi) = (&model.group, model.permutation(&auto));
        assert_eq!(fg.order(), 8);
        let r = fg.twisted_classes(&phi).unwrap().count();
        assert_eq!(auto.reidemeister_number().finite().unwrap(), &BigInt::from(r));
        assert_eq!(auto.fix_subgroup().order().finite().unwrap(), &BigInt::from(fg.fixed_points(&phi).len()));
    }

    #[test]
    fn audit_on_small_orders() {
        let audit = audit_group("D8", &FiniteGroup::metacyclic(4, 2, 3, 0));
        assert!(audit.passed());
        assert_eq!(audit.automorphisms, 8);
        assert!(audit.quotient_pairs >= 8 * 2);
    }

    #[test]
    fn normal_subgroups_of_s3_and_q8() {
        let s3 = FiniteGroup::metacyclic(3, 2, 2, 0);
        assert_eq!(s3.normal_subgroups().len(), 3);
        let q8 = FiniteGroup::metacyclic(4, 2, 3, 2);
        assert_eq!(q8.normal_subgroups().len(), 6);
    }
}
