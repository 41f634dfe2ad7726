use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{int, rat, Rational};

/// Combinatorial fan data as read from a fan file. Unvalidated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub name: String,
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        rays: Vec<Vec<i64>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Self {
        Fan {
            name: name.into(),
            dim,
            rays,
            max_cones,
        }
    }

    /// Checks smoothness and completeness and precomputes walls.
    pub fn validate(self) -> Result<ToricVariety> {
        ToricVariety::from_fan(self)
    }
}

/// Codimension-one cone shared by two maximal cones, i.e. a torus-invariant curve.
///
/// With `u_a`, `u_b` the rays of `cone_a`, `cone_b` off the wall, the relation
/// `u_a + u_b + sum_i relation[i] * u_{rays[i]} = 0` holds exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub rays: Vec<usize>,
    pub cone_a: usize,
    pub cone_b: usize,
    pub ray_a: usize,
    pub ray_b: usize,
    pub relation: Vec<i64>,
}

impl Wall {
    /// `D·C` for the wall curve, given integer ray coefficients.
    pub fn pair_i64(&self, coeffs: &[i64]) -> i64 {
        coeffs[self.ray_a]
            + coeffs[self.ray_b]
            + self
                .rays
                .iter()
                .zip(&self.relation)
                .map(|(&r, &b)| b * coeffs[r])
                .sum::<i64>()
    }

    pub fn pair(&self, coeffs: &[Rational]) -> Rational {
        let mut acc = &coeffs[self.ray_a] + &coeffs[self.ray_b];
        for (&r, &b) in self.rays.iter().zip(&self.relation) {
            acc += &coeffs[r] * int(b);
        }
        acc
    }
}

/// A validated smooth complete toric variety.
#[derive(Debug)]
pub struct ToricVariety {
    fan: Fan,
    walls: Vec<Wall>,
    /// Per maximal cone, the integer inverse of the matrix whose rows are the
    /// cone's rays (in the cone's listed order).
    inverses: Vec<Vec<Vec<i64>>>,
}

impl PartialEq for ToricVariety {
    fn eq(&self, other: &Self) -> bool {
        self.fan == other.fan
    }
}

impl Eq for ToricVariety {}

impl ToricVariety {
    fn from_fan(fan: Fan) -> Result<Self> {
        let n = fan.dim;
        for (index, ray) in fan.rays.iter().enumerate() {
            if ray.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: ray.len(),
                });
            }
            let g = ray.iter().fold(0i64, |g, &x| linalg::gcd_i64(g, x));
            if g != 1 {
                return Err(Error::NonPrimitiveRay {
                    index,
                    ray: ray.clone(),
                });
            }
        }
        for second in 0..fan.rays.len() {
            if let Some(first) = (0..second).find(|&j| fan.rays[j] == fan.rays[second]) {
                return Err(Error::DuplicateRay { first, second });
            }
        }
        if fan.max_cones.is_empty() {
            return Err(Error::NotComplete {
                wall: Vec::new(),
                cones: 0,
            });
        }
        let mut seen_cones: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut inverses: Vec<Vec<Vec<i64>>> = Vec::with_capacity(fan.max_cones.len());
        for (c, cone) in fan.max_cones.iter().enumerate() {
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            if cone.len() != n {
                return Err(Error::MalformedCone {
                    cone: c,
                    reason: format!("has {} rays, expected {n}", cone.len()),
                });
            }
            if set.len() != n {
                return Err(Error::MalformedCone {
                    cone: c,
                    reason: "repeats a ray".into(),
                });
            }
            if let Some(&bad) = cone.iter().find(|&&r| r >= fan.rays.len()) {
                return Err(Error::MalformedCone {
                    cone: c,
                    reason: format!("ray index {bad} out of range"),
                });
            }
            if let Some(&first) = seen_cones.get(&set) {
                return Err(Error::OverlappingCones { first, second: c });
            }
            seen_cones.insert(set, c);
            let m: Vec<Vec<i64>> = cone.iter().map(|&r| fan.rays[r].clone()).collect();
            match linalg::det_i64(&m) {
                0 => return Err(Error::NotSimplicial { cone: c }),
                1 | -1 => {}
                det => {
                    return Err(Error::NotSmooth {
                        cone: c,
                        det: det.abs(),
                    })
                }
            }
            let inv = linalg::inverse(&linalg::to_rational_rows(&m)).expect("unimodular");
            inverses.push(
                inv.iter()
                    .map(|row| {
                        row.iter()
                            .map(|x| x.to_integer().to_i64().expect("small entries"))
                            .collect()
                    })
                    .collect(),
            );
        }

        // wall (sorted ray set) -> [(cone, ray off the wall)]
        let mut incidence: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, cone) in fan.max_cones.iter().enumerate() {
            for &off in cone {
                let mut wall: Vec<usize> = cone.iter().copied().filter(|&r| r != off).collect();
                wall.sort_unstable();
                incidence.entry(wall).or_default().push((c, off));
            }
        }
        let mut walls = Vec::with_capacity(incidence.len());
        for (rays, cones) in incidence {
            let &[(cone_a, ray_a), (cone_b, ray_b)] = cones.as_slice() else {
                return Err(Error::NotComplete {
                    wall: rays,
                    cones: cones.len(),
                });
            };
            // u_b in the basis of cone_a's rays.
            let inv = &inverses[cone_a];
            let ub = &fan.rays[ray_b];
            let coord = |r: usize| -> i64 {
                let pos = fan.max_cones[cone_a].iter().position(|&x| x == r).unwrap();
                (0..n).map(|k| ub[k] * inv[k][pos]).sum()
            };
            if coord(ray_a) != -1 {
                return Err(Error::OverlappingCones {
                    first: cone_a,
                    second: cone_b,
                });
            }
            let relation = rays.iter().map(|&r| -coord(r)).collect();
            walls.push(Wall {
                rays,
                cone_a,
                cone_b,
                ray_a,
                ray_b,
                relation,
            });
        }

        let variety = ToricVariety {
            fan,
            walls,
            inverses,
        };
        variety.check_connected()?;
        variety.check_single_cover()?;
        Ok(variety)
    }

    fn check_connected(&self) -> Result<()> {
        let k = self.fan.max_cones.len();
        let mut adj = vec![Vec::new(); k];
        for w in &self.walls {
            adj[w.cone_a].push(w.cone_b);
            adj[w.cone_b].push(w.cone_a);
        }
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for &d in &adj[c] {
                if !std::mem::replace(&mut seen[d], true) {
                    queue.push_back(d);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// A closed pseudo-manifold fan covers `R^n` some whole number of times;
    /// count the cones containing one generic interior point of cone 0.
    fn check_single_cover(&self) -> Result<()> {
        let n = self.fan.dim;
        'attempt: for attempt in 1..=16i64 {
            let mut p = vec![Rational::zero(); n];
            for (i, &r) in self.fan.max_cones[0].iter().enumerate() {
                let w = Rational::one() + rat(i as i64 * attempt, 9973 + attempt);
                for (pk, &u) in p.iter_mut().zip(&self.fan.rays[r]) {
                    *pk += &w * int(u);
                }
            }
            let mut hits = Vec::new();
            for (c, inv) in self.inverses.iter().enumerate() {
                let coords: Vec<Rational> = (0..n)
                    .map(|j| (0..n).map(|k| &p[k] * int(inv[k][j])).sum())
                    .collect();
                if coords.iter().any(Signed::is_negative) {
                    continue;
                }
                if coords.iter().any(Zero::is_zero) {
                    continue 'attempt;
                }
                {
                    hits.push(c);
                }
            }
            return match hits.as_slice() {
                [_] => Ok(()),
                [first, second, ..] => Err(Error::OverlappingCones {
                    first: *first,
                    second: *second,
                }),
                [] => Err(Error::Disconnected),
            };
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.fan.name
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn dim(&self) -> usize {
        self.fan.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.fan.rays
    }

    pub fn num_rays(&self) -> usize {
        self.fan.rays.len()
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.fan.max_cones
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    /// Integer inverse of the ray matrix of a maximal cone: column `j` is the
    /// dual vector `m` with `<m, u_i> = [i == j]` over the cone's rays.
    pub fn cone_inverse(&self, cone: usize) -> &[Vec<i64>] {
        &self.inverses[cone]
    }

    /// Smooth complete fans with `n + 1` rays are exactly projective space.
    pub fn is_projective_space(&self) -> bool {
        self.num_rays() == self.dim() + 1
    }

    /// Anticanonical class is ample: `2 + sum(relation) > 0` on every wall.
    pub fn is_fano(&self) -> bool {
        self.walls
            .iter()
            .all(|w| 2 + w.relation.iter().sum::<i64>() > 0)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.fan.name = name.into();
        self
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }

    /// Fan isomorphism under `GL(n, Z)` with a compatible relabeling of rays.
    pub fn is_isomorphic(&self, other: &ToricVariety) -> bool {
        let n = self.dim();
        if n != other.dim()
            || self.num_rays() != other.num_rays()
            || self.cones().len() != other.cones().len()
        {
            return false;
        }
        let target_cones: BTreeSet<BTreeSet<usize>> = other
            .cones()
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect();
        let src_inv = &self.inverses[0];
        for tgt in other.cones() {
            for perm in permutations(n) {
                // Linear map sending src ray i to tgt ray perm[i]: M = T^t * S^{-t},
                // applied as v -> sum_i <v, col_i(S^{-1})> * t_{perm i}.
                let map = |v: &[i64]| -> Vec<i64> {
                    let mut out = vec![0i64; n];
                    for i in 0..n {
                        let c: i64 = (0..n).map(|k| v[k] * src_inv[k][i]).sum();
                        for (o, t) in out.iter_mut().zip(&other.rays()[tgt[perm[i]]]) {
                            *o += c * t;
                        }
                    }
                    out
                };
                let relabel: Option<Vec<usize>> = self
                    .rays()
                    .iter()
                    .map(|r| {
                        let img = map(r);
                        other.rays().iter().position(|t| *t == img)
                    })
                    .collect();
                let Some(relabel) = relabel else { continue };
                let mapped: BTreeSet<BTreeSet<usize>> = self
                    .cones()
                    .iter()
                    .map(|c| c.iter().map(|&r| relabel[r]).collect())
                    .collect();
                if mapped == target_cones {
                    return true;
                }
            }
        }
        false
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
