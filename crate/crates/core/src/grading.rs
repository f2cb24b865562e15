//! Finitely generated abelian grading groups `Z^m x Z/n_1 x ... x Z/n_k`,
//! subgroups, homomorphisms, integral group rings and permutation modules.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradingGroup {
    rank: usize,
    moduli: Vec<u64>,
}

/// An element of a grading group. Torsion entries are always reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree {
    free: Vec<i64>,
    torsion: Vec<u64>,
}

impl Degree {
    pub fn free(&self) -> &[i64] {
        &self.free
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// The distinguished integer coordinate, if the group has one.
    pub fn omega(&self) -> Option<i64> {
        self.free.first().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&x| x == 0)
    }

    pub fn flat(&self) -> Vec<i64> {
        self.free
            .iter()
            .copied()
            .chain(self.torsion.iter().map(|&t| t as i64))
            .collect()
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.flat().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let flat = self.flat();
        let mut seq = s.serialize_seq(Some(flat.len()))?;
        for x in flat {
            seq.serialize_element(&x)?;
        }
        seq.end()
    }
}

impl GradingGroup {
    pub fn new(rank: usize, mut moduli: Vec<u64>) -> Result<GradingGroup> {
        if let Some(&n) = moduli.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!("torsion modulus {n} must be at least 2")));
        }
        moduli.sort_unstable();
        Ok(GradingGroup { rank, moduli })
    }

    pub fn trivial() -> GradingGroup {
        GradingGroup { rank: 0, moduli: Vec::new() }
    }

    pub fn integers() -> GradingGroup {
        GradingGroup { rank: 1, moduli: Vec::new() }
    }

    pub fn free_abelian(rank: usize) -> GradingGroup {
        GradingGroup { rank, moduli: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<GradingGroup> {
        GradingGroup::new(0, vec![n])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of coordinates (free plus torsion).
    pub fn ngens(&self) -> usize {
        self.rank + self.moduli.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.moduli.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.moduli.iter().product())
    }

    pub fn zero(&self) -> Degree {
        Degree {
            free: vec![0; self.rank],
            torsion: vec![0; self.moduli.len()],
        }
    }

    pub fn degree(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<Degree> {
        if free.len() != self.rank || torsion.len() != self.moduli.len() {
            return Err(Error::InvalidDegree(format!(
                "expected {} free and {} torsion entries for {self}, got {} and {}",
                self.rank,
                self.moduli.len(),
                free.len(),
                torsion.len()
            )));
        }
        let torsion = torsion
            .iter()
            .zip(&self.moduli)
            .map(|(&t, &n)| t.rem_euclid(n as i64) as u64)
            .collect();
        Ok(Degree { free, torsion })
    }

    /// Parse the JSON layout `[free..., torsion...]`.
    pub fn degree_from_flat(&self, flat: &[i64]) -> Result<Degree> {
        if flat.len() != self.ngens() {
            return Err(Error::InvalidDegree(format!(
                "degree {flat:?} has {} entries, {self} needs {}",
                flat.len(),
                self.ngens()
            )));
        }
        self.degree(flat[..self.rank].to_vec(), flat[self.rank..].to_vec())
    }

    pub fn free_unit(&self, i: usize) -> Degree {
        let mut d = self.zero();
        d.free[i] = 1;
        d
    }

    pub fn torsion_unit(&self, i: usize) -> Degree {
        let mut d = self.zero();
        d.torsion[i] = 1 % self.moduli[i];
        d
    }

    /// Coordinate generators: free units then torsion units.
    pub fn generators(&self) -> Vec<Degree> {
        (0..self.rank)
            .map(|i| self.free_unit(i))
            .chain((0..self.moduli.len()).map(|i| self.torsion_unit(i)))
            .collect()
    }

    pub fn contains(&self, d: &Degree) -> bool {
        d.free.len() == self.rank
            && d.torsion.len() == self.moduli.len()
            && d.torsion.iter().zip(&self.moduli).all(|(&t, &n)| t < n)
    }

    fn check(&self, d: &Degree) -> Result<()> {
        if self.contains(d) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("degree {d} is not an element of {self}")))
        }
    }

    /// Checked addition.
    pub fn degree_add(&self, a: &Degree, b: &Degree) -> Result<Degree> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn add(&self, a: &Degree, b: &Degree) -> Degree {
        debug_assert!(self.contains(a) && self.contains(b), "{a} + {b} in {self}");
        Degree {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.moduli)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        }
    }

    pub fn neg(&self, a: &Degree) -> Degree {
        Degree {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a.torsion.iter().zip(&self.moduli).map(|(x, n)| (n - x) % n).collect(),
        }
    }

    pub fn sub(&self, a: &Degree, b: &Degree) -> Degree {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Degree, k: i64) -> Degree {
        Degree {
            free: a.free.iter().map(|x| x * k).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &n)| (x as i64 * k).rem_euclid(n as i64) as u64)
                .collect(),
        }
    }

    /// All degrees with free coordinates in `[-radius, radius]`.
    pub fn window(&self, radius: i64) -> Vec<Degree> {
        let lo = vec![-radius; self.rank];
        let hi = vec![radius; self.rank];
        self.boxed(&lo, &hi)
    }

    /// All degrees with free coordinate `i` in `[lo[i], hi[i]]`.
    pub fn boxed(&self, lo: &[i64], hi: &[i64]) -> Vec<Degree> {
        let mut out = vec![Vec::new()];
        for i in 0..self.rank {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (lo[i]..=hi[i]).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        for &n in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (0..n as i64).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|flat| self.degree_from_flat(&flat).expect("window degree"))
            .collect()
    }

    /// The product `self x other` with the two coordinate embeddings.
    pub fn product(&self, other: &GradingGroup) -> (GradingGroup, GroupHom, GroupHom) {
        let rank = self.rank + other.rank;
        // stable sort keeps left factor first among equal moduli
        let mut tagged: Vec<(u64, usize, usize)> = self
            .moduli
            .iter()
            .enumerate()
            .map(|(i, &n)| (n, 0, i))
            .chain(other.moduli.iter().enumerate().map(|(i, &n)| (n, 1, i)))
            .collect();
        tagged.sort_by_key(|&(n, side, i)| (n, side, i));
        let target = GradingGroup {
            rank,
            moduli: tagged.iter().map(|t| t.0).collect(),
        };
        let slot = |side: usize, i: usize| tagged.iter().position(|t| t.1 == side && t.2 == i).unwrap();
        let left = GroupHom::new(
            self.clone(),
            target.clone(),
            (0..self.rank)
                .map(|i| target.free_unit(i))
                .chain((0..self.moduli.len()).map(|i| target.torsion_unit(slot(0, i))))
                .collect(),
        )
        .expect("left factor embedding");
        let right = GroupHom::new(
            other.clone(),
            target.clone(),
            (0..other.rank)
                .map(|i| target.free_unit(self.rank + i))
                .chain((0..other.moduli.len()).map(|i| target.torsion_unit(slot(1, i))))
                .collect(),
        )
        .expect("right factor embedding");
        (target, left, right)
    }

    /// The group with free coordinate `i` removed, with the projection onto it
    /// (as flat coordinates) and the inclusion back.
    pub fn drop_free(&self, i: usize) -> (GradingGroup, GroupHom) {
        let target = GradingGroup {
            rank: self.rank - 1,
            moduli: self.moduli.clone(),
        };
        let images = (0..target.rank)
            .map(|k| self.free_unit(if k < i { k } else { k + 1 }))
            .chain((0..self.moduli.len()).map(|k| self.torsion_unit(k)))
            .collect();
        let inclusion = GroupHom::new(target.clone(), self.clone(), images).expect("coordinate inclusion");
        (target, inclusion)
    }

    /// The torsion part `prod Z/n_i`, with its inclusion.
    pub fn torsion_subgroup(&self) -> (GradingGroup, GroupHom) {
        let target = GradingGroup {
            rank: 0,
            moduli: self.moduli.clone(),
        };
        let images = (0..self.moduli.len()).map(|k| self.torsion_unit(k)).collect();
        let inclusion = GroupHom::new(target.clone(), self.clone(), images).expect("torsion inclusion");
        (target, inclusion)
    }
}

impl fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.rank == 1 {
            parts.push("Z".into());
        } else if self.rank > 1 {
            parts.push(format!("Z^{}", self.rank));
        }
        for n in &self.moduli {
            parts.push(format!("Z{n}"));
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Parses the display form: `1`, `Z`, `Z^2`, `Z2`, `Z*Z2`, `Z^2*Z3*Z2`.
impl std::str::FromStr for GradingGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<GradingGroup> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "1" {
            return Ok(GradingGroup::trivial());
        }
        let bad = || Error::InvalidGroup(format!("unrecognised group `{s}`"));
        let mut rank = 0;
        let mut moduli = Vec::new();
        for part in t.split('*') {
            let rest = part.strip_prefix('Z').ok_or_else(bad)?;
            if rest.is_empty() {
                rank += 1;
            } else if let Some(k) = rest.strip_prefix('^') {
                rank += k.parse::<usize>().map_err(|_| bad())?;
            } else {
                moduli.push(rest.parse::<u64>().map_err(|_| bad())?);
            }
        }
        GradingGroup::new(rank, moduli)
    }
}

/// A homomorphism given by the images of the coordinate generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: GradingGroup,
    target: GradingGroup,
    images: Vec<Degree>,
}

impl GroupHom {
    pub fn new(source: GradingGroup, target: GradingGroup, images: Vec<Degree>) -> Result<GroupHom> {
        if images.len() != source.ngens() {
            return Err(Error::Shape(format!(
                "homomorphism from {source} needs {} generator images, got {}",
                source.ngens(),
                images.len()
            )));
        }
        for im in &images {
            target.check(im)?;
        }
        for (k, &n) in source.moduli.iter().enumerate() {
            if !target.scale(&images[source.rank + k], n as i64).is_zero() {
                return Err(Error::InvalidGroup(format!(
                    "image of torsion generator {k} does not have order dividing {n}"
                )));
            }
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn identity(group: &GradingGroup) -> GroupHom {
        GroupHom::new(group.clone(), group.clone(), group.generators()).unwrap()
    }

    pub fn zero(source: &GradingGroup, target: &GradingGroup) -> GroupHom {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            images: vec![target.zero(); source.ngens()],
        }
    }

    pub fn source(&self) -> &GradingGroup {
        &self.source
    }

    pub fn target(&self) -> &GradingGroup {
        &self.target
    }

    pub fn images(&self) -> &[Degree] {
        &self.images
    }

    pub fn apply(&self, d: &Degree) -> Degree {
        let mut out = self.target.zero();
        for (k, x) in d.flat().into_iter().enumerate() {
            if x != 0 {
                out = self.target.add(&out, &self.target.scale(&self.images[k], x));
            }
        }
        out
    }

    /// For homomorphisms sending each generator to a distinct generator of
    /// the same order: the unique preimage of `d`, if any.
    pub fn coordinate_preimage(&self, d: &Degree) -> Option<Option<Degree>> {
        let tflat_len = self.target.ngens();
        let mut slots = Vec::with_capacity(self.images.len());
        for (k, im) in self.images.iter().enumerate() {
            let flat = im.flat();
            let nz: Vec<usize> = (0..tflat_len).filter(|&i| flat[i] != 0).collect();
            if nz.len() != 1 || flat[nz[0]] != 1 {
                return None;
            }
            let slot = nz[0];
            let is_free_src = k < self.source.rank;
            let is_free_tgt = slot < self.target.rank;
            if is_free_src != is_free_tgt {
                return None;
            }
            if !is_free_src && self.source.moduli[k - self.source.rank] != self.target.moduli[slot - self.target.rank] {
                return None;
            }
            if slots.contains(&slot) {
                return None;
            }
            slots.push(slot);
        }
        let flat = d.flat();
        if (0..tflat_len).any(|i| !slots.contains(&i) && flat[i] != 0) {
            return Some(None);
        }
        let src: Vec<i64> = slots.iter().map(|&s| flat[s]).collect();
        Some(Some(self.source.degree_from_flat(&src).unwrap()))
    }

    pub fn is_coordinate_embedding(&self) -> bool {
        self.coordinate_preimage(&self.target.zero()).is_some()
    }
}

/// A subgroup, stored as the Hermite normal form of its preimage lattice in
/// `Z^(m+k)` (the torsion relations are always included).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    group: GradingGroup,
    hnf: Vec<Vec<i64>>,
}

fn hermite_normal_form(mut rows: Vec<Vec<i64>>, ncols: usize) -> Vec<Vec<i64>> {
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            rows.swap(r, piv);
            if rows[r][c] < 0 {
                for x in rows[r].iter_mut() {
                    *x = -*x;
                }
            }
            let mut done = true;
            for i in r + 1..rows.len() {
                let q = rows[i][c].div_euclid(rows[r][c]);
                if q != 0 {
                    let pivot_row = rows[r].clone();
                    for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                        *x = x.checked_sub(q.checked_mul(*p).expect("HNF overflow")).expect("HNF overflow");
                    }
                }
                if rows[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c] == 0 {
            continue;
        }
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().take(r) {
            let q = row[c].div_euclid(pivot_row[c]);
            if q != 0 {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= q * p;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

impl Subgroup {
    pub fn generated(group: &GradingGroup, gens: &[Degree]) -> Subgroup {
        let n = group.ngens();
        let mut rows: Vec<Vec<i64>> = gens.iter().map(|g| g.flat()).collect();
        for (k, &m) in group.moduli.iter().enumerate() {
            let mut rel = vec![0; n];
            rel[group.rank + k] = m as i64;
            rows.push(rel);
        }
        Subgroup {
            group: group.clone(),
            hnf: hermite_normal_form(rows, n),
        }
    }

    pub fn trivial(group: &GradingGroup) -> Subgroup {
        Subgroup::generated(group, &[])
    }

    pub fn whole(group: &GradingGroup) -> Subgroup {
        Subgroup::generated(group, &group.generators())
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    fn pivot(row: &[i64]) -> usize {
        row.iter().position(|&x| x != 0).unwrap()
    }

    /// Canonical representative of the coset `d + H`.
    pub fn coset_rep(&self, d: &Degree) -> Degree {
        let mut v = d.flat();
        for row in &self.hnf {
            let c = Subgroup::pivot(row);
            let q = v[c].div_euclid(row[c]);
            if q != 0 {
                for (x, p) in v.iter_mut().zip(row) {
                    *x -= q * p;
                }
            }
        }
        self.group.degree_from_flat(&v).unwrap()
    }

    pub fn contains(&self, d: &Degree) -> bool {
        self.coset_rep(d).is_zero()
    }

    /// Index in the ambient group; `None` when infinite.
    pub fn index(&self) -> Option<u64> {
        if self.hnf.len() < self.group.ngens() {
            return None;
        }
        Some(self.hnf.iter().map(|row| row[Subgroup::pivot(row)] as u64).product())
    }

    pub fn is_trivial(&self) -> bool {
        self.generators().is_empty()
    }

    /// Nonzero generators read off the normal form.
    pub fn generators(&self) -> Vec<Degree> {
        self.hnf
            .iter()
            .map(|row| self.group.degree_from_flat(row).unwrap())
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn image(&self, hom: &GroupHom) -> Subgroup {
        let gens: Vec<Degree> = self.generators().iter().map(|g| hom.apply(g)).collect();
        Subgroup::generated(hom.target(), &gens)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.generators().iter().all(|g| other.contains(g))
    }
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.generators().serialize(s)
    }
}

/// An element of the integral group ring, finitely supported.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupRingElement {
    coefficients: BTreeMap<Degree, i64>,
}

impl GroupRingElement {
    pub fn zero() -> GroupRingElement {
        GroupRingElement::default()
    }

    pub fn monomial(d: Degree, c: i64) -> GroupRingElement {
        let mut e = GroupRingElement::zero();
        e.add_term(d, c);
        e
    }

    pub fn one(group: &GradingGroup) -> GroupRingElement {
        GroupRingElement::monomial(group.zero(), 1)
    }

    pub fn coefficients(&self) -> &BTreeMap<Degree, i64> {
        &self.coefficients
    }

    pub fn coefficient(&self, d: &Degree) -> i64 {
        self.coefficients.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add_term(&mut self, d: Degree, c: i64) {
        let entry = self.coefficients.entry(d.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coefficients.remove(&d);
        }
    }

    pub fn add(&self, other: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (d, &c) in &other.coefficients {
            out.add_term(d.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement {
            coefficients: self.coefficients.iter().map(|(d, c)| (d.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &GroupRingElement, group: &GradingGroup) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (a, &x) in &self.coefficients {
            for (b, &y) in &other.coefficients {
                out.add_term(group.add(a, b), x * y);
            }
        }
        out
    }

    /// Sum of coefficients (the augmentation).
    pub fn augmentation(&self) -> i64 {
        self.coefficients.values().sum()
    }
}

/// One orbit `Z[G/H]` of a permutation module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orbit {
    pub label: String,
    pub stabilizer: Subgroup,
}

impl Orbit {
    pub fn size(&self) -> Option<u64> {
        self.stabilizer.index()
    }
}

impl Serialize for Orbit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Orbit", 3)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("orbit_size", &self.size())?;
        st.serialize_field("stabilizer", &self.stabilizer)?;
        st.end()
    }
}

/// A permutation module over the group ring: free over `Z` on classes that
/// the group permutes, stored as its orbit decomposition `sum Z[G/H_i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ShiftModule {
    group: GradingGroup,
    orbits: Vec<Orbit>,
}

impl ShiftModule {
    pub fn new(group: &GradingGroup, orbits: Vec<Orbit>) -> Result<ShiftModule> {
        for o in &orbits {
            if o.stabilizer.group() != group {
                return Err(Error::GroupMismatch(format!(
                    "stabilizer of {} lives in {}, module is over {group}",
                    o.label,
                    o.stabilizer.group()
                )));
            }
        }
        Ok(ShiftModule { group: group.clone(), orbits })
    }

    pub fn zero(group: &GradingGroup) -> ShiftModule {
        ShiftModule { group: group.clone(), orbits: Vec::new() }
    }

    /// Free module of rank `n` with generic labels.
    pub fn free(group: &GradingGroup, n: usize) -> ShiftModule {
        ShiftModule {
            group: group.clone(),
            orbits: (0..n)
                .map(|i| Orbit {
                    label: format!("e{i}"),
                    stabilizer: Subgroup::trivial(group),
                })
                .collect(),
        }
    }

    /// Build from an explicit action: `perms[k]` is the permutation of the
    /// classes induced by coordinate generator `k`.
    pub fn from_permutations(group: &GradingGroup, labels: Vec<String>, perms: &[Vec<usize>]) -> Result<ShiftModule> {
        let n = labels.len();
        if perms.len() != group.ngens() {
            return Err(Error::Shape(format!(
                "{group} has {} generators, {} permutations given",
                group.ngens(),
                perms.len()
            )));
        }
        for p in perms {
            let seen: BTreeSet<usize> = p.iter().copied().collect();
            if p.len() != n || seen.len() != n || p.iter().any(|&x| x >= n) {
                return Err(Error::Invariant("generator action is not a permutation of the classes".into()));
            }
        }
        for a in 0..perms.len() {
            for b in 0..a {
                if (0..n).any(|x| perms[a][perms[b][x]] != perms[b][perms[a][x]]) {
                    return Err(Error::Invariant(format!("actions of generators {a} and {b} do not commute")));
                }
            }
        }
        for (k, &m) in group.moduli.iter().enumerate() {
            let p = &perms[group.rank + k];
            for x in 0..n {
                let mut y = x;
                for _ in 0..m {
                    y = p[y];
                }
                if y != x {
                    return Err(Error::Invariant(format!(
                        "torsion generator {k} acts with order not dividing {m}"
                    )));
                }
            }
        }
        let gens = group.generators();
        let mut word: Vec<Option<Degree>> = vec![None; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if word[start].is_some() {
                continue;
            }
            word[start] = Some(group.zero());
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for (k, p) in perms.iter().enumerate() {
                    let y = p[x];
                    if word[y].is_none() {
                        word[y] = Some(group.add(word[x].as_ref().unwrap(), &gens[k]));
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            let mut schreier = Vec::new();
            for &x in &members {
                for (k, p) in perms.iter().enumerate() {
                    let y = p[x];
                    let wx = word[x].as_ref().unwrap();
                    let wy = word[y].as_ref().unwrap();
                    schreier.push(group.sub(&group.add(wx, &gens[k]), wy));
                }
            }
            orbits.push(Orbit {
                label: labels[start].clone(),
                stabilizer: Subgroup::generated(group, &schreier),
            });
        }
        Ok(ShiftModule { group: group.clone(), orbits })
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn num_orbits(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_free(&self) -> bool {
        self.orbits.iter().all(|o| o.stabilizer.is_trivial())
    }

    /// Rank as a free module, when free.
    pub fn free_rank(&self) -> Option<usize> {
        self.is_free().then_some(self.orbits.len())
    }

    /// Rank as an abelian group; `None` when infinite.
    pub fn z_rank(&self) -> Option<u64> {
        self.orbits.iter().map(|o| o.size()).sum()
    }

    pub fn direct_sum(&self, other: &ShiftModule) -> Result<ShiftModule> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!("{} vs {}", self.group, other.group)));
        }
        let mut orbits = self.orbits.clone();
        orbits.extend(other.orbits.iter().cloned());
        Ok(ShiftModule { group: self.group.clone(), orbits })
    }

    /// Sorted stabilizers: a complete isomorphism invariant.
    pub fn signature(&self) -> Vec<Subgroup> {
        let mut s: Vec<Subgroup> = self.orbits.iter().map(|o| o.stabilizer.clone()).collect();
        s.sort();
        s
    }

    /// Restrict scalars along `hom: H -> G` with `H` finite, returning the
    /// orbit structure over `H` of the classes in finite orbits. Infinite
    /// orbits are reported as `None`.
    pub fn restrict_finite(&self, hom: &GroupHom) -> Result<Option<ShiftModule>> {
        if hom.target() != &self.group {
            return Err(Error::GroupMismatch("restriction target differs from module group".into()));
        }
        let mut orbits = Vec::new();
        for o in &self.orbits {
            let Some(size) = o.size() else {
                return Ok(None);
            };
            // enumerate the coset space G/H via representatives
            let reps = coset_representatives(&o.stabilizer, size);
            let index: BTreeMap<Degree, usize> = reps.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
            let perms: Vec<Vec<usize>> = hom
                .images()
                .iter()
                .map(|g| {
                    reps.iter()
                        .map(|r| index[&o.stabilizer.coset_rep(&self.group.add(r, g))])
                        .collect()
                })
                .collect();
            let labels = reps.iter().map(|r| format!("{}{}", o.label, r)).collect();
            let sub = ShiftModule::from_permutations(hom.source(), labels, &perms)?;
            orbits.extend(sub.orbits);
        }
        Ok(Some(ShiftModule { group: hom.source().clone(), orbits }))
    }
}

fn coset_representatives(h: &Subgroup, size: u64) -> Vec<Degree> {
    let g = h.group();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([g.zero()]);
    seen.insert(g.zero());
    while let Some(x) = queue.pop_front() {
        for gen in g.generators() {
            let y = h.coset_rep(&g.add(&x, &gen));
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    debug_assert_eq!(seen.len() as u64, size);
    seen.into_iter().collect()
}

/// `M (x)_{Z[G]} Z[Gamma x G]` along an embedding `G -> Gamma x G`.
pub fn induce_module(m: &ShiftModule, embedding: &GroupHom) -> Result<ShiftModule> {
    if embedding.source() != m.group() {
        return Err(Error::GroupMismatch(format!(
            "module over {} cannot be induced along a map from {}",
            m.group(),
            embedding.source()
        )));
    }
    if !embedding.is_coordinate_embedding() {
        return Err(Error::GroupMismatch(format!(
            "{} is not a declared factor of {}",
            embedding.source(),
            embedding.target()
        )));
    }
    let orbits = m
        .orbits
        .iter()
        .map(|o| Orbit {
            label: o.label.clone(),
            stabilizer: o.stabilizer.image(embedding),
        })
        .collect();
    Ok(ShiftModule {
        group: embedding.target().clone(),
        orbits,
    })
}

/// Induce to `gamma x G` using the standard product embedding.
pub fn induce_to_product(m: &ShiftModule, gamma: &GradingGroup) -> Result<ShiftModule> {
    let (_, _, right) = gamma.product(m.group());
    induce_module(m, &right)
}

pub fn shift_module_iso(m: &ShiftModule, n: &ShiftModule) -> bool {
    m.group() == n.group() && m.signature() == n.signature()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz2() -> GradingGroup {
        GradingGroup::new(1, vec![2]).unwrap()
    }

    #[test]
    fn degree_addition_reduces_torsion() {
        let g = zz2();
        let a = g.degree(vec![1], vec![1]).unwrap();
        let b = g.degree(vec![2], vec![1]).unwrap();
        assert_eq!(g.degree_add(&a, &b).unwrap(), g.degree(vec![3], vec![0]).unwrap());
        let z = GradingGroup::integers();
        let five = z.degree(vec![5], vec![]).unwrap();
        let sum = z.degree_add(&z.degree(vec![2], vec![]).unwrap(), &z.degree(vec![3], vec![]).unwrap());
        assert_eq!(sum.unwrap(), five);
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let g = zz2();
        let z = GradingGroup::integers();
        let a = g.degree(vec![1], vec![1]).unwrap();
        let b = z.degree(vec![1], vec![]).unwrap();
        assert!(matches!(g.degree_add(&a, &b), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn degrees_serialize_flat() {
        let g = zz2();
        let a = g.degree(vec![-3], vec![1]).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), "[-3,1]");
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"rank":1,"moduli":[2]}"#);
    }

    #[test]
    fn moduli_are_sorted() {
        let g = GradingGroup::new(0, vec![3, 2]).unwrap();
        assert_eq!(g.moduli(), &[2, 3]);
        assert!(GradingGroup::new(0, vec![1]).is_err());
    }

    #[test]
    fn subgroup_index_and_cosets() {
        let g = zz2();
        let h = Subgroup::generated(&g, &[g.degree(vec![2], vec![1]).unwrap()]);
        assert_eq!(h.index(), Some(4));
        assert!(h.contains(&g.degree(vec![4], vec![0]).unwrap()));
        assert!(!h.contains(&g.degree(vec![2], vec![0]).unwrap()));
        assert_eq!(Subgroup::trivial(&g).index(), None);
        assert_eq!(Subgroup::whole(&g).index(), Some(1));
        let t = Subgroup::trivial(&GradingGroup::cyclic(6).unwrap());
        assert_eq!(t.index(), Some(6));
    }

    #[test]
    fn induce_trivial_module_gives_free_module() {
        let triv = GradingGroup::trivial();
        let m = ShiftModule::free(&triv, 4);
        let induced = induce_to_product(&m, &GradingGroup::integers()).unwrap();
        assert_eq!(induced.free_rank(), Some(4));
        let one = induce_to_product(&ShiftModule::free(&triv, 1), &GradingGroup::integers()).unwrap();
        assert_eq!(one.free_rank(), Some(1));
    }

    #[test]
    fn swapped_classes_form_one_free_orbit() {
        let c2 = GradingGroup::cyclic(2).unwrap();
        let m = ShiftModule::from_permutations(&c2, vec!["a".into(), "b".into()], &[vec![1, 0]]).unwrap();
        assert_eq!(m.num_orbits(), 1);
        let induced = induce_to_product(&m, &GradingGroup::integers()).unwrap();
        assert_eq!(induced.num_orbits(), 1);
        assert!(induced.is_free());
        assert_eq!(induced.group(), &zz2());
    }

    #[test]
    fn free_module_versus_trivial_action() {
        let z = GradingGroup::integers();
        let laurent = ShiftModule::free(&z, 1);
        let trivial4 = ShiftModule::from_permutations(&z, (0..4).map(|i| i.to_string()).collect(), &[vec![0, 1, 2, 3]])
            .unwrap();
        assert!(!shift_module_iso(&laurent, &trivial4));
        assert!(shift_module_iso(&laurent, &laurent));
        let relabeled = ShiftModule::from_permutations(&z, vec!["x".into(), "y".into()], &[vec![0, 1]]).unwrap();
        let other = ShiftModule::from_permutations(&z, vec!["y".into(), "x".into()], &[vec![0, 1]]).unwrap();
        assert!(shift_module_iso(&relabeled, &other));
    }

    #[test]
    fn non_commuting_actions_are_rejected() {
        let g = GradingGroup::free_abelian(2);
        let err = ShiftModule::from_permutations(&g, (0..3).map(|i| i.to_string()).collect(), &[vec![1, 0, 2], vec![0, 2, 1]]);
        assert!(matches!(err, Err(Error::Invariant(_))));
    }

    #[test]
    fn group_ring_unit_and_product() {
        let z = GradingGroup::integers();
        let x = GroupRingElement::monomial(z.free_unit(0), 1);
        let xinv = GroupRingElement::monomial(z.neg(&z.free_unit(0)), 1);
        assert_eq!(x.mul(&xinv, &z), GroupRingElement::one(&z));
        let s = x.add(&GroupRingElement::one(&z));
        let sq = s.mul(&s, &z);
        assert_eq!(sq.coefficient(&z.free_unit(0)), 2);
        assert_eq!(sq.augmentation(), 4);
    }

    #[test]
    fn restriction_recovers_orbit_structure() {
        let (prod, _, right) = GradingGroup::integers().product(&GradingGroup::cyclic(2).unwrap());
        let c2 = right.source().clone();
        let m = ShiftModule::from_permutations(&c2, vec!["a".into(), "b".into()], &[vec![1, 0]]).unwrap();
        let with_finite_stab = ShiftModule::new(
            &prod,
            vec![Orbit {
                label: "p".into(),
                stabilizer: Subgroup::generated(&prod, &[prod.free_unit(0)]),
            }],
        )
        .unwrap();
        let back = with_finite_stab.restrict_finite(&right).unwrap().unwrap();
        assert!(shift_module_iso(&back, &m));
    }
}
