//! Finite groups given by verified Cayley tables.
//!
//! Groups always carry the discrete topology.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::point::Point;
use crate::topology::FinSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    elements: Vec<String>,
    identity: usize,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl FinGroup {
    /// Verify a multiplication table given by element indices.
    pub fn mk_group(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::MalformedTable("no elements".into()));
        }
        let distinct: BTreeSet<&String> = elements.iter().collect();
        if distinct.len() != n {
            return Err(Error::MalformedTable("duplicate element names".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedTable(format!("table must be {n}x{n}")));
        }
        if let Some(&v) = table.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::MalformedTable(format!("entry {v} outside 0..{n}")));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAssociative(
                            elements[a].clone(),
                            elements[b].clone(),
                            elements[c].clone(),
                        ));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(Error::NoIdentity)?;
        let inv = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| Error::NoInverse(elements[g].clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinGroup {
            elements,
            identity,
            mul: table,
            inv,
        })
    }

    /// Verify a table given by element names.
    pub fn from_named_table(elements: Vec<String>, table: &[Vec<String>]) -> Result<Self> {
        let idx = |s: &String| {
            elements
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| Error::MalformedTable(format!("unknown element `{s}` in table")))
        };
        let table = table
            .iter()
            .map(|row| row.iter().map(idx).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::mk_group(elements, table)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("n >= 1")
    }

    /// Integers mod `n`, elements named `"0"`..`"n-1"`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTable("cyclic group needs n >= 1".into()));
        }
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::mk_group(elements, table)
    }

    /// Klein four-group `{e, a, b, c}`.
    pub fn klein4() -> Self {
        let elements = ["e", "a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        Self::mk_group(elements, table).expect("Klein table is a group")
    }

    /// Symmetric group on `n <= 4` letters; elements are one-line words
    /// (`"120"` sends 0->1, 1->2, 2->0), product `(p*q)(i) = p(q(i))`.
    pub fn sym(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTable("symmetric group needs n >= 1".into()));
        }
        if n > 4 {
            return Err(Error::SizeLimit(format!("sym({n}) exceeds the n <= 4 guard")));
        }
        let perms = permutations(n);
        let elements: Vec<String> = perms
            .iter()
            .map(|p| p.iter().map(|d| d.to_string()).collect())
            .collect();
        let pos = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| pos(&(0..n).map(|i| p[q[i]]).collect()))
                    .collect()
            })
            .collect();
        Self::mk_group(elements, table)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, g: usize) -> &str {
        &self.elements[g]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::ForeignPoint(format!("group element `{name}`")))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    /// A pair `(a, b)` with `ab != ba`, if one exists.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n)
            .filter(|&z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Subgroup generated by `gens`, as a sorted list of indices.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// All subgroups generated by at most two elements (every subgroup of a
    /// group of order <= 8), sorted by order then content.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for a in 0..n {
            for b in a..n {
                let h = self.generated(&[a, b]);
                found.insert((h.len(), h));
            }
        }
        found.into_iter().map(|(_, h)| h).collect()
    }

    /// The group as a discrete space whose points are its element names.
    pub fn discrete_space(&self) -> FinSpace {
        FinSpace::discrete_points(self.elements.iter().map(|e| Point::atom(e.clone())).collect())
            .expect("group is nonempty with distinct names")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
