use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use sl2::GL2Element;
use zlinalg::numth::euler_phi;

use crate::CurveError;

/// Closures larger than this are refused.
pub const MAX_GROUP_ORDER: usize = 1 << 24;

/// `{"modulus": N, "generators": [[a, b, c, d], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub modulus: u64,
    pub generators: Vec<[i64; 4]>,
}

/// A validated subgroup `G` of `GL2(Z/NZ)` with `-I` in `G` and `det G` everything.
#[derive(Clone, Debug)]
pub struct Group {
    pub spec: GroupSpec,
    pub gens: Vec<GL2Element>,
    pub elements: HashSet<GL2Element>,
    /// Least `w > 0` with `(1 w; 0 1)` in `G`.
    pub width: u64,
}

impl GroupSpec {
    pub fn new(modulus: u64, generators: Vec<[i64; 4]>) -> GroupSpec {
        GroupSpec { modulus, generators }
    }

    pub fn elements(&self) -> Result<Vec<GL2Element>, CurveError> {
        self.generators.iter().map(|g| GL2Element::new(self.modulus, *g).map_err(CurveError::from)).collect()
    }
}

impl Group {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn modulus(&self) -> u64 {
        self.spec.modulus
    }

    pub fn contains(&self, g: &GL2Element) -> bool {
        self.elements.contains(g)
    }

    /// `G ∩ SL2(Z/NZ)`.
    pub fn special(&self) -> Vec<GL2Element> {
        let mut v: Vec<GL2Element> = self.elements.iter().filter(|g| g.det() == 1 % g.n).copied().collect();
        v.sort();
        v
    }
}

fn closure(n: u64, gens: &[GL2Element]) -> Result<HashSet<GL2Element>, CurveError> {
    let id = GL2Element::identity(n);
    let mut seen = HashSet::from([id]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y) {
                if seen.len() > MAX_GROUP_ORDER {
                    return Err(CurveError::GroupTooLarge(MAX_GROUP_ORDER));
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen)
}

pub fn validate_group(spec: &GroupSpec) -> Result<Group, CurveError> {
    let n = spec.modulus;
    assert!(n > 0, "modulus must be positive");
    let gens = spec.elements()?;
    let elements = closure(n, &gens)?;
    if !elements.contains(&GL2Element::scalar(n, -1)?) {
        return Err(CurveError::MissingMinusIdentity);
    }
    let dets: HashSet<u64> = elements.iter().map(|g| g.det()).collect();
    let expected = euler_phi(n) as usize;
    if dets.len() != expected {
        return Err(CurveError::DetNotSurjective { n, got: dets.len(), expected });
    }
    let t = GL2Element::t(n);
    let width = (1..=n).find(|&w| elements.contains(&t.pow(w))).expect("T^N = I");
    Ok(Group { spec: spec.clone(), gens, elements, width })
}
