//! Finite topological spaces.
//!
//! A finite space is stored through its minimal-neighbourhood basis: for each
//! point `p` the least open set `U_p` containing it. A set is open iff it
//! contains `U_p` for each of its points, so every operation here reduces to
//! bitset arithmetic on the basis. The open-set lattice is only materialised
//! on demand (see [`FinSpace::open_sets`]).

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::point::Point;

/// Subset of a space's points, indexed by point position.
pub type PointSet = FixedBitSet;

/// Build a `PointSet` of capacity `n` holding the given indices.
pub fn set_with(n: usize, items: impl IntoIterator<Item = usize>) -> PointSet {
    let mut s = FixedBitSet::with_capacity(n);
    for i in items {
        s.insert(i);
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationFlags {
    pub t0: bool,
    pub t1: bool,
    pub hausdorff: bool,
    pub regular: bool,
}

/// How [`FinSpace::mk_space`] interprets its generator family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    /// Generators are a subbasis; the topology is the one they generate.
    Subbasis,
    /// Generators are the minimal neighbourhoods themselves, one per point.
    ValidateMinBasis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinSpace {
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    nbhd: Vec<PointSet>,
}

fn index_points(points: &[Point]) -> Result<HashMap<Point, usize>> {
    if points.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    let mut index = HashMap::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.clone(), i).is_some() {
            return Err(Error::Validation(format!("duplicate point `{p}`")));
        }
    }
    Ok(index)
}

impl FinSpace {
    pub fn mk_space(points: Vec<Point>, generators: &[PointSet], mode: GenMode) -> Result<Self> {
        match mode {
            GenMode::Subbasis => Self::from_subbasis(points, generators),
            GenMode::ValidateMinBasis => Self::from_min_nbhd(points, generators.to_vec()),
        }
    }

    /// Topology generated by `generators`: `U_p` is the intersection of all
    /// generators containing `p` (the whole space if none does).
    pub fn from_subbasis(points: Vec<Point>, generators: &[PointSet]) -> Result<Self> {
        let index = index_points(&points)?;
        let n = points.len();
        for g in generators {
            if let Some(bad) = g.ones().find(|&i| i >= n) {
                return Err(Error::ForeignPoint(format!("index {bad}")));
            }
        }
        let mut nbhd = vec![full(n); n];
        for g in generators {
            let mut g = g.clone();
            g.grow(n);
            for p in g.ones() {
                nbhd[p].intersect_with(&g);
            }
        }
        Ok(FinSpace { points, index, nbhd })
    }

    /// Validate-mode constructor: `nbhd[p]` must contain `p` and be closed
    /// under the specialisation relation.
    pub fn from_min_nbhd(points: Vec<Point>, nbhd: Vec<PointSet>) -> Result<Self> {
        let index = index_points(&points)?;
        let n = points.len();
        if nbhd.len() != n {
            return Err(Error::Validation(format!(
                "{} neighbourhoods for {} points",
                nbhd.len(),
                n
            )));
        }
        let mut nbhd = nbhd;
        for (p, u) in nbhd.iter_mut().enumerate() {
            if let Some(bad) = u.ones().find(|&i| i >= n) {
                return Err(Error::ForeignPoint(format!("index {bad} in U_{}", points[p])));
            }
            u.grow(n);
            if !u.contains(p) {
                return Err(Error::Validation(format!(
                    "`{}` is not in its own neighbourhood",
                    points[p]
                )));
            }
        }
        for p in 0..n {
            for q in nbhd[p].ones() {
                if !nbhd[q].is_subset(&nbhd[p]) {
                    return Err(Error::Validation(format!(
                        "`{}` lies in U_{} but U_{} is not contained in U_{}",
                        points[q], points[p], points[q], points[p]
                    )));
                }
            }
        }
        Ok(FinSpace { points, index, nbhd })
    }

    /// For constructions whose output is valid by construction.
    pub(crate) fn from_parts(points: Vec<Point>, nbhd: Vec<PointSet>) -> Self {
        let index = index_points(&points).expect("derived space has distinct points");
        let space = FinSpace { points, index, nbhd };
        debug_assert!(space.basis_is_valid());
        space
    }

    fn basis_is_valid(&self) -> bool {
        (0..self.len()).all(|p| {
            self.nbhd[p].contains(p) && self.nbhd[p].ones().all(|q| self.nbhd[q].is_subset(&self.nbhd[p]))
        })
    }

    /// Build from string labels; `nbhd` lists `(p, U_p)` for every point.
    pub fn from_labels(points: &[&str], nbhd: &[(&str, &[&str])]) -> Result<Self> {
        let pts: Vec<Point> = points.iter().map(|s| Point::atom(*s)).collect();
        let index = index_points(&pts)?;
        let n = pts.len();
        let mut sets = vec![None; n];
        for (p, u) in nbhd {
            let i = *index
                .get(&Point::atom(*p))
                .ok_or_else(|| Error::ForeignPoint(p.to_string()))?;
            let mut s = FixedBitSet::with_capacity(n);
            for q in *u {
                let j = *index
                    .get(&Point::atom(*q))
                    .ok_or_else(|| Error::ForeignPoint(q.to_string()))?;
                s.insert(j);
            }
            sets[i] = Some(s);
        }
        let sets = sets
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::Validation(format!("no neighbourhood for `{}`", pts[i]))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_min_nbhd(pts, sets)
    }

    pub fn discrete(labels: &[&str]) -> Result<Self> {
        let points: Vec<Point> = labels.iter().map(|s| Point::atom(*s)).collect();
        let n = points.len();
        let nbhd = (0..n).map(|i| set_with(n, [i])).collect();
        Self::from_min_nbhd(points, nbhd)
    }

    pub fn discrete_points(points: Vec<Point>) -> Result<Self> {
        let n = points.len();
        let nbhd = (0..n).map(|i| set_with(n, [i])).collect();
        Self::from_min_nbhd(points, nbhd)
    }

    pub fn indiscrete(labels: &[&str]) -> Result<Self> {
        let points: Vec<Point> = labels.iter().map(|s| Point::atom(*s)).collect();
        let n = points.len();
        Self::from_min_nbhd(points, vec![full(n); n])
    }

    /// `{0, 1}` with `{1}` the only nontrivial open set.
    pub fn sierpinski() -> Self {
        Self::from_labels(&["0", "1"], &[("0", &["0", "1"]), ("1", &["1"])]).expect("valid")
    }

    /// Khalimsky circle on `n` points (`n` even, at least 4): odd points are
    /// open, even point `p` has neighbourhood `{p-1, p, p+1}` mod `n`.
    pub fn khalimsky_circle(n: usize) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(Error::Validation(format!("Khalimsky circle needs even n >= 4, got {n}")));
        }
        let points = (0..n).map(|i| Point::atom(i.to_string())).collect();
        let nbhd = (0..n)
            .map(|p| {
                if p % 2 == 1 {
                    set_with(n, [p])
                } else {
                    set_with(n, [(p + n - 1) % n, p, (p + 1) % n])
                }
            })
            .collect();
        Self::from_min_nbhd(points, nbhd)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn index_of_label(&self, label: &str) -> Result<usize> {
        self.index_of(&Point::atom(label))
            .ok_or_else(|| Error::ForeignPoint(label.to_string()))
    }

    /// Minimal open neighbourhood `U_p`.
    pub fn nbhd(&self, p: usize) -> &PointSet {
        &self.nbhd[p]
    }

    pub fn min_nbhds(&self) -> &[PointSet] {
        &self.nbhd
    }

    pub fn set_of<P: Into<Point>>(&self, labels: impl IntoIterator<Item = P>) -> Result<PointSet> {
        let mut s = self.empty_set();
        for l in labels {
            let p: Point = l.into();
            let i = self.index_of(&p).ok_or_else(|| Error::ForeignPoint(p.to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn labels_of(&self, s: &PointSet) -> Vec<Point> {
        s.ones().map(|i| self.points[i].clone()).collect()
    }

    pub fn empty_set(&self) -> PointSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        full(self.len())
    }

    pub(crate) fn check(&self, s: &PointSet) -> Result<()> {
        match s.ones().find(|&i| i >= self.len()) {
            Some(i) => Err(Error::ForeignPoint(format!("index {i}"))),
            None => Ok(()),
        }
    }

    fn normalised(&self, s: &PointSet) -> Result<PointSet> {
        self.check(s)?;
        let mut s = s.clone();
        s.grow(self.len());
        Ok(s)
    }

    /// `q` lies in `U_p` (specialisation preorder).
    pub fn leq(&self, q: usize, p: usize) -> bool {
        self.nbhd[p].contains(q)
    }

    pub fn is_open(&self, s: &PointSet) -> Result<bool> {
        let s = self.normalised(s)?;
        Ok(self.open_set(&s))
    }

    pub fn closure(&self, s: &PointSet) -> Result<PointSet> {
        let s = self.normalised(s)?;
        Ok(self.closure_set(&s))
    }

    pub fn interior(&self, s: &PointSet) -> Result<PointSet> {
        let s = self.normalised(s)?;
        Ok(self.interior_set(&s))
    }

    pub fn is_closed(&self, s: &PointSet) -> Result<bool> {
        let s = self.normalised(s)?;
        Ok(self.closed_set(&s))
    }

    pub(crate) fn open_set(&self, s: &PointSet) -> bool {
        s.ones().all(|p| self.nbhd[p].is_subset(s))
    }

    pub(crate) fn closed_set(&self, s: &PointSet) -> bool {
        let mut c = self.full_set();
        c.difference_with(s);
        self.open_set(&c)
    }

    pub(crate) fn closure_set(&self, s: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for p in 0..self.len() {
            if !self.nbhd[p].is_disjoint(s) {
                out.insert(p);
            }
        }
        out
    }

    pub(crate) fn interior_set(&self, s: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for p in s.ones() {
            if self.nbhd[p].is_subset(s) {
                out.insert(p);
            }
        }
        out
    }

    /// Least open set containing `s`.
    pub fn open_hull(&self, s: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for p in s.ones() {
            out.union_with(&self.nbhd[p]);
        }
        out
    }

    /// Connectedness of `s` in the subspace topology, via the comparability
    /// graph of the specialisation preorder restricted to `s`.
    pub fn is_connected(&self, s: &PointSet) -> Result<bool> {
        let s = self.normalised(s)?;
        let Some(start) = s.ones().next() else {
            return Err(Error::EmptySet);
        };
        let mut seen = self.empty_set();
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for q in s.ones() {
                if !seen.contains(q) && (self.leq(p, q) || self.leq(q, p)) {
                    seen.insert(q);
                    queue.push_back(q);
                }
            }
        }
        Ok(seen == s)
    }

    pub fn separation(&self) -> SeparationFlags {
        let n = self.len();
        let mut t0 = true;
        let mut hausdorff = true;
        let mut regular = true;
        for p in 0..n {
            for q in 0..n {
                if p == q {
                    continue;
                }
                if p < q && self.nbhd[p] == self.nbhd[q] {
                    t0 = false;
                }
                if p < q && !self.nbhd[p].is_disjoint(&self.nbhd[q]) {
                    hausdorff = false;
                }
                // X \ U_p is the largest closed set missing p; regularity
                // reduces to U_p being disjoint from U_q for each q outside it.
                if !self.nbhd[p].contains(q) && !self.nbhd[p].is_disjoint(&self.nbhd[q]) {
                    regular = false;
                }
            }
        }
        let t1 = (0..n).all(|p| self.nbhd[p].count_ones(..) == 1);
        SeparationFlags {
            t0,
            t1,
            hausdorff,
            regular,
        }
    }

    /// Every open set, or `SizeLimit` once more than `limit` have been found.
    pub fn open_sets(&self, limit: usize) -> Result<Vec<PointSet>> {
        let mut seen: HashSet<PointSet> = HashSet::new();
        let empty = self.empty_set();
        seen.insert(empty.clone());
        let mut queue = VecDeque::from([empty]);
        let mut out = Vec::new();
        while let Some(o) = queue.pop_front() {
            for p in 0..self.len() {
                if o.contains(p) {
                    continue;
                }
                let mut next = o.clone();
                next.union_with(&self.nbhd[p]);
                if seen.insert(next.clone()) {
                    if seen.len() > limit {
                        return Err(Error::SizeLimit(format!("more than {limit} open sets")));
                    }
                    queue.push_back(next);
                }
            }
            out.push(o);
        }
        out.sort_by(|a, b| a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Product space; the point `(a_i, b_j)` has index `i * b.len() + j`.
    pub fn product(a: &FinSpace, b: &FinSpace) -> FinSpace {
        let (na, nb) = (a.len(), b.len());
        let mut points = Vec::with_capacity(na * nb);
        let mut nbhd = Vec::with_capacity(na * nb);
        for i in 0..na {
            for j in 0..nb {
                points.push(Point::pair(a.points[i].clone(), b.points[j].clone()));
                let mut u = FixedBitSet::with_capacity(na * nb);
                for ii in a.nbhd[i].ones() {
                    for jj in b.nbhd[j].ones() {
                        u.insert(ii * nb + jj);
                    }
                }
                nbhd.push(u);
            }
        }
        FinSpace::from_parts(points, nbhd)
    }

    /// Subspace on `s`; points keep their relative order.
    pub fn subspace(&self, s: &PointSet) -> Result<FinSpace> {
        Ok(self.subspace_with_indices(s)?.0)
    }

    /// Subspace plus the list of ambient indices, in subspace order.
    pub fn subspace_with_indices(&self, s: &PointSet) -> Result<(FinSpace, Vec<usize>)> {
        let s = self.normalised(s)?;
        let members: Vec<usize> = s.ones().collect();
        if members.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut local = vec![usize::MAX; self.len()];
        for (k, &p) in members.iter().enumerate() {
            local[p] = k;
        }
        let m = members.len();
        let nbhd = members
            .iter()
            .map(|&p| {
                let mut u = FixedBitSet::with_capacity(m);
                for q in self.nbhd[p].ones() {
                    if s.contains(q) {
                        u.insert(local[q]);
                    }
                }
                u
            })
            .collect();
        let points = members.iter().map(|&p| self.points[p].clone()).collect();
        Ok((FinSpace::from_parts(points, nbhd), members))
    }

    /// Quotient by a partition given as a list of classes; each class is
    /// labelled by the set of its members.
    pub fn quotient(&self, classes: &[PointSet]) -> Result<FinSpace> {
        let mut class_of = vec![usize::MAX; self.len()];
        for (c, cls) in classes.iter().enumerate() {
            self.check(cls)?;
            if cls.ones().next().is_none() {
                return Err(Error::NotAPartition(format!("class {c} is empty")));
            }
            for p in cls.ones() {
                if class_of[p] != usize::MAX {
                    return Err(Error::NotAPartition(format!(
                        "`{}` lies in two classes",
                        self.points[p]
                    )));
                }
                class_of[p] = c;
            }
        }
        if let Some(p) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::NotAPartition(format!("`{}` is in no class", self.points[p])));
        }
        let labels = classes
            .iter()
            .map(|cls| Point::Set(self.labels_of(cls)))
            .collect();
        self.quotient_by_map(&class_of, labels)
    }

    /// Quotient along a surjection `class_of: points -> 0..labels.len()`.
    ///
    /// The least open neighbourhood of a class `y` is the least open
    /// saturated set over it, reached by iterating
    /// `S -> q(open_hull(q^-1(S)))` from `S = {y}`.
    pub fn quotient_by_map(&self, class_of: &[usize], labels: Vec<Point>) -> Result<FinSpace> {
        let k = labels.len();
        if class_of.len() != self.len() {
            return Err(Error::NotAPartition(format!(
                "class map covers {} of {} points",
                class_of.len(),
                self.len()
            )));
        }
        let mut members = vec![self.empty_set(); k];
        for (p, &c) in class_of.iter().enumerate() {
            if c >= k {
                return Err(Error::NotAPartition(format!("class index {c} out of range")));
            }
            members[c].insert(p);
        }
        if let Some(c) = members.iter().position(|m| m.ones().next().is_none()) {
            return Err(Error::NotAPartition(format!("class `{}` is empty", labels[c])));
        }
        let nbhd = (0..k)
            .map(|y| {
                let mut cur = set_with(k, [y]);
                loop {
                    let mut pre = self.empty_set();
                    for c in cur.ones() {
                        pre.union_with(&members[c]);
                    }
                    let hull = self.open_hull(&pre);
                    let next = set_with(k, hull.ones().map(|p| class_of[p]));
                    if next == cur {
                        break cur;
                    }
                    cur = next;
                }
            })
            .collect();
        Ok(FinSpace::from_parts(labels, nbhd))
    }
}

fn full(n: usize) -> PointSet {
    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    s
}

/// A total or partial map between the point sets of two spaces.
#[derive(Clone, Debug)]
pub struct PointMap<'a> {
    source: &'a FinSpace,
    target: &'a FinSpace,
    assignment: Vec<Option<usize>>,
}

impl<'a> PointMap<'a> {
    pub fn total(source: &'a FinSpace, target: &'a FinSpace, assignment: Vec<usize>) -> Result<Self> {
        Self::partial(source, target, assignment.into_iter().map(Some).collect())
    }

    pub fn partial(
        source: &'a FinSpace,
        target: &'a FinSpace,
        assignment: Vec<Option<usize>>,
    ) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::CarrierMismatch(format!(
                "assignment has {} entries, source has {} points",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(y) = assignment.iter().flatten().find(|&&y| y >= target.len()) {
            return Err(Error::CarrierMismatch(format!("image index {y} outside target")));
        }
        Ok(PointMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(space: &'a FinSpace) -> Self {
        PointMap {
            source: space,
            target: space,
            assignment: (0..space.len()).map(Some).collect(),
        }
    }

    pub fn source(&self) -> &'a FinSpace {
        self.source
    }

    pub fn target(&self) -> &'a FinSpace {
        self.target
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.assignment[x]
    }

    pub fn domain(&self) -> PointSet {
        set_with(
            self.source.len(),
            self.assignment.iter().enumerate().filter_map(|(i, y)| y.map(|_| i)),
        )
    }

    pub fn image(&self) -> PointSet {
        set_with(self.target.len(), self.assignment.iter().flatten().copied())
    }

    pub fn image_of(&self, s: &PointSet) -> PointSet {
        set_with(self.target.len(), s.ones().filter_map(|x| self.assignment[x]))
    }

    pub fn preimage_of(&self, s: &PointSet) -> PointSet {
        set_with(
            self.source.len(),
            self.assignment
                .iter()
                .enumerate()
                .filter_map(|(i, y)| y.filter(|&y| s.contains(y)).map(|_| i)),
        )
    }

    pub fn is_total(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.target.len());
        self.assignment.iter().flatten().all(|&y| {
            let fresh = !seen.contains(y);
            seen.insert(y);
            fresh
        })
    }

    fn require_total(&self) -> Result<()> {
        if self.is_total() {
            Ok(())
        } else {
            Err(Error::CarrierMismatch(
                "map is not total on its source; restrict to a subspace first".into(),
            ))
        }
    }

    pub fn is_continuous(&self) -> Result<bool> {
        self.require_total()?;
        Ok((0..self.target.len()).all(|y| self.source.open_set(&self.preimage_of(self.target.nbhd(y)))))
    }

    pub fn is_open_map(&self) -> Result<bool> {
        self.require_total()?;
        Ok((0..self.source.len()).all(|x| self.target.open_set(&self.image_of(self.source.nbhd(x)))))
    }

    pub fn is_homeomorphism(&self) -> Result<bool> {
        self.require_total()?;
        let bijective = self.is_injective() && self.image().count_ones(..) == self.target.len();
        Ok(bijective && self.is_continuous()? && self.is_open_map()?)
    }

    /// Injective, and a homeomorphism onto the subspace on its image.
    pub fn is_embedding(&self) -> Result<bool> {
        self.require_total()?;
        if !self.is_injective() {
            return Ok(false);
        }
        let (image_space, members) = self.target.subspace_with_indices(&self.image())?;
        let mut local = vec![usize::MAX; self.target.len()];
        for (k, &p) in members.iter().enumerate() {
            local[p] = k;
        }
        let onto = PointMap::total(
            self.source,
            &image_space,
            self.assignment.iter().map(|y| local[y.unwrap()]).collect(),
        )?;
        onto.is_homeomorphism()
    }
}

/// Whether the partial map `f` on `space` restricts to a homeomorphism
/// between the subspaces `dom` and `cod`.
pub fn is_partial_homeomorphism(
    space: &FinSpace,
    dom: &PointSet,
    cod: &PointSet,
    f: &[Option<usize>],
) -> bool {
    let dom_n: Vec<usize> = dom.ones().collect();
    let cod_n: Vec<usize> = cod.ones().collect();
    if dom_n.len() != cod_n.len() {
        return false;
    }
    if dom_n.is_empty() {
        return true;
    }
    let Ok((ds, _)) = space.subspace_with_indices(dom) else {
        return false;
    };
    let Ok((cs, _)) = space.subspace_with_indices(cod) else {
        return false;
    };
    let mut local = vec![usize::MAX; space.len()];
    for (k, &p) in cod_n.iter().enumerate() {
        local[p] = k;
    }
    let mut assignment = Vec::with_capacity(dom_n.len());
    for &x in &dom_n {
        match f.get(x).copied().flatten() {
            Some(y) if cod.contains(y) => assignment.push(local[y]),
            _ => return false,
        }
    }
    PointMap::total(&ds, &cs, assignment)
        .and_then(|m| m.is_homeomorphism())
        .unwrap_or(false)
}

/// Continuity of the partial map `f` on its domain `dom` (subspace
/// topology) into the whole of `target`.
pub fn is_continuous_on(
    source: &FinSpace,
    dom: &PointSet,
    target: &FinSpace,
    f: &[Option<usize>],
) -> bool {
    // Preimage of each U_y must be relatively open in dom, i.e. contain
    // U_x ∩ dom for each of its points x.
    (0..target.len()).all(|y| {
        let u = target.nbhd(y);
        dom.ones().all(|x| match f[x] {
            Some(fx) if u.contains(fx) => source
                .nbhd(x)
                .ones()
                .filter(|&z| dom.contains(z))
                .all(|z| f[z].is_some_and(|fz| u.contains(fz))),
            _ => true,
        })
    })
}
