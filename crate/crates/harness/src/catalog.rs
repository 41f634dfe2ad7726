//! Fan files and the bundled catalog of smooth toric Fano varieties.
//!
//! A fan file is JSON:
//! `{"name": "P2", "dim": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]], "note": "..."}`
//! where `note` is optional free text recording where the fan came from.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use torifan_core::linalg::combinations;
use torifan_core::{Blowup, Fan, ToricVariety};

use crate::error::{HarnessError, Result};

/// Environment variable naming a directory of fan files that replaces the bundled catalog.
pub const CATALOG_ENV: &str = "TORIFAN_CATALOG";

const BUNDLED: &[(&str, &str)] = &[
    ("p2.json", include_str!("../catalog/p2.json")),
    ("p1xp1.json", include_str!("../catalog/p1xp1.json")),
    ("f1.json", include_str!("../catalog/f1.json")),
    ("bl2p2.json", include_str!("../catalog/bl2p2.json")),
    ("bl3p2.json", include_str!("../catalog/bl3p2.json")),
    ("p3.json", include_str!("../catalog/p3.json")),
    ("p1xp1xp1.json", include_str!("../catalog/p1xp1xp1.json")),
    ("blp3.json", include_str!("../catalog/blp3.json")),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub name: String,
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl FanFile {
    pub fn from_fan(fan: &Fan, note: impl Into<String>) -> Self {
        FanFile {
            name: fan.name.clone(),
            dim: fan.dim,
            rays: fan.rays.clone(),
            max_cones: fan.max_cones.clone(),
            note: note.into(),
        }
    }

    pub fn into_fan(self) -> Fan {
        Fan::new(self.name, self.dim, self.rays, self.max_cones)
    }
}

/// Parses fan JSON. `path` only labels diagnostics.
pub fn parse_fan(text: &str, path: &Path) -> Result<FanFile> {
    let file: FanFile = serde_json::from_str(text).map_err(|e| HarnessError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    for (i, ray) in file.rays.iter().enumerate() {
        if ray.len() != file.dim {
            return Err(HarnessError::Schema {
                path: path.to_path_buf(),
                field: format!("rays[{i}]"),
                message: format!("has {} entries but dim is {}", ray.len(), file.dim),
            });
        }
    }
    Ok(file)
}

pub fn read_fan_file(path: &Path) -> Result<FanFile> {
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_fan(&text, path)
}

/// Reads and validates a fan file.
pub fn load_fan(path: &Path) -> Result<ToricVariety> {
    read_fan_file(path)?
        .into_fan()
        .validate()
        .map_err(|source| HarnessError::Validation {
            path: path.to_path_buf(),
            source,
        })
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub variety: Arc<ToricVariety>,
    pub note: String,
}

impl CatalogEntry {
    pub fn dim(&self) -> usize {
        self.variety.dim()
    }
}

/// Ordered list of validated smooth toric Fano varieties.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Validates `fan` and appends it; the anticanonical class must be ample.
    pub fn push(&mut self, fan: Fan, note: impl Into<String>) -> Result<()> {
        let name = fan.name.clone();
        let variety = fan.validate().map_err(|e| HarnessError::Catalog {
            name: name.clone(),
            reason: e.to_string(),
        })?;
        if !variety.is_fano() {
            return Err(HarnessError::Catalog {
                name,
                reason: "anticanonical class is not ample".into(),
            });
        }
        self.entries.push(CatalogEntry {
            name,
            variety: Arc::new(variety),
            note: note.into(),
        });
        Ok(())
    }

    fn push_file(&mut self, file: FanFile, path: &Path) -> Result<()> {
        let note = file.note.clone();
        let variety = file
            .into_fan()
            .validate()
            .map_err(|source| HarnessError::Validation {
                path: path.to_path_buf(),
                source,
            })?;
        if !variety.is_fano() {
            return Err(HarnessError::Catalog {
                name: variety.name().to_string(),
                reason: format!("{}: anticanonical class is not ample", path.display()),
            });
        }
        let name = variety.name().to_string();
        self.entries.push(CatalogEntry {
            name,
            variety: Arc::new(variety),
            note,
        });
        Ok(())
    }

    /// The fan files shipped with the crate: the five toric del Pezzo surfaces,
    /// `P^3`, `(P^1)^3` and the blow-up of `P^3` at a fixed point.
    pub fn bundled() -> Self {
        let mut catalog = Catalog::new();
        for (file, text) in BUNDLED {
            let path = Path::new("catalog").join(file);
            let parsed = parse_fan(text, &path).expect("bundled fan files parse");
            catalog
                .push_file(parsed, &path)
                .expect("bundled fans are smooth Fano");
        }
        catalog
    }

    /// Every `*.json` file in `dir`, in file-name order.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let io = |source| HarnessError::Io {
            path: dir.to_path_buf(),
            source,
        };
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(io)?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()
            .map_err(io)?;
        paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
        paths.sort();
        let mut catalog = Catalog::new();
        for p in paths {
            catalog.push_file(read_fan_file(&p)?, &p)?;
        }
        Ok(catalog)
    }

    /// `dir` if given, else `$TORIFAN_CATALOG`, else the bundled catalog.
    pub fn resolve(dir: Option<&Path>) -> Result<Self> {
        match dir {
            Some(d) => Self::from_dir(d),
            None => match std::env::var_os(CATALOG_ENV) {
                Some(d) if !d.is_empty() => Self::from_dir(Path::new(&d)),
                _ => Ok(Self::bundled()),
            },
        }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn of_dim(&self, n: usize) -> Catalog {
        Catalog {
            entries: self
                .entries
                .iter()
                .filter(|e| e.dim() == n)
                .cloned()
                .collect(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.entries.iter().map(CatalogEntry::dim).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

/// Fans built from formulas, used to re-derive the bundled files.
pub mod generators {
    use super::*;

    /// Rays `e_1, ..., e_n, -(e_1 + ... + e_n)`; every `n`-subset is a cone.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        rays.push(vec![-1; n]);
        Fan::new(format!("P{n}"), n, rays, combinations(n + 1, n).collect())
    }

    pub fn product(a: &Fan, b: &Fan, name: impl Into<String>) -> Fan {
        let dim = a.dim + b.dim;
        let mut rays: Vec<Vec<i64>> = a
            .rays
            .iter()
            .map(|r| [r.as_slice(), &vec![0; b.dim]].concat())
            .collect();
        rays.extend(
            b.rays
                .iter()
                .map(|r| [vec![0; a.dim].as_slice(), r].concat()),
        );
        let shift = a.rays.len();
        let cones = a
            .max_cones
            .iter()
            .flat_map(|ca| {
                b.max_cones.iter().map(move |cb| {
                    ca.iter()
                        .copied()
                        .chain(cb.iter().map(|r| r + shift))
                        .collect()
                })
            })
            .collect();
        Fan::new(name, dim, rays, cones)
    }

    /// Complete smooth fan on rays listed counterclockwise.
    pub fn polygon(name: &str, rays: &[[i64; 2]]) -> Fan {
        let k = rays.len();
        Fan::new(
            name,
            2,
            rays.iter().map(|r| r.to_vec()).collect(),
            (0..k).map(|i| vec![i, (i + 1) % k]).collect(),
        )
    }

    /// `P^1 × P^1` with the factor rays interleaved counterclockwise.
    pub fn p1xp1() -> Fan {
        polygon("P1xP1", &[[1, 0], [0, 1], [-1, 0], [0, -1]])
    }

    pub fn f1() -> Fan {
        polygon("F1", &[[1, 0], [0, 1], [-1, 1], [0, -1]])
    }

    pub fn bl2p2() -> Fan {
        polygon("Bl2P2", &[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1]])
    }

    pub fn bl3p2() -> Fan {
        polygon(
            "Bl3P2",
            &[[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
        )
    }

    /// The five smooth toric del Pezzo surfaces.
    pub fn del_pezzo_surfaces() -> Vec<Fan> {
        let mut p2 = projective_space(2);
        p2.max_cones = vec![vec![0, 1], vec![1, 2], vec![2, 0]];
        vec![p2, p1xp1(), f1(), bl2p2(), bl3p2()]
    }

    pub fn p1_cubed() -> Fan {
        let p1 = projective_space(1);
        let mut f = product(&product(&p1, &p1, "P1xP1"), &p1, "P1xP1xP1");
        // rays e1, -e1, e2, -e2, e3, -e3 reordered to e1, e2, e3, -e1, -e2, -e3
        let perm = [0, 3, 1, 4, 2, 5];
        let mut rays = vec![Vec::new(); 6];
        for (old, &new) in perm.iter().enumerate() {
            rays[new] = f.rays[old].clone();
        }
        f.rays = rays;
        for c in &mut f.max_cones {
            for r in c.iter_mut() {
                *r = perm[*r];
            }
        }
        f
    }

    /// Star subdivision of `P^3` at cone 0.
    pub fn blp3() -> Fan {
        let p3 = Arc::new(
            projective_space(3)
                .validate()
                .expect("P3 is smooth and complete"),
        );
        let b = Blowup::new(&p3, 0).expect("fixed-point blow-ups of P3 are smooth");
        let mut fan = b.variety().fan().clone();
        fan.name = "BlP3".into();
        fan
    }
}
