//! JSON file formats: simplicial sets, posets, category presentations and
//! filtration problems.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use thomason_core::category::{saturate, Arrow, CatPresentation, FinCategory, FinPoset, DEFAULT_MAX_PATH_LEN};
use thomason_core::filtration::{FiniteMonoid, HomFiltrationProblem, MonoidPushoutProblem, SetInclusion};
use thomason_core::simplicial::{FiniteSimplicialSet, Simplex};

/// A face reference: the nondegenerate cell and the degeneracies applied to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDoc {
    pub degeneracies: Vec<usize>,
    pub cell: usize,
}

/// `sset.json`. Faces are keyed `"n/cell/i"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsetDoc {
    pub dims: usize,
    pub cells: Vec<Vec<String>>,
    pub faces: BTreeMap<String, FaceDoc>,
}

impl SsetDoc {
    pub fn from_sset(x: &FiniteSimplicialSet) -> Self {
        let dims = x.top_dim();
        let cells: Vec<Vec<String>> = (0..=dims).map(|n| x.labels(n).to_vec()).collect();
        let mut faces = BTreeMap::new();
        for n in 1..=dims {
            for c in 0..x.cell_count(n) {
                for i in 0..=n {
                    let s = x.face(n, c, i);
                    faces.insert(format!("{n}/{c}/{i}"), FaceDoc { degeneracies: s.degeneracies(), cell: s.cell() });
                }
            }
        }
        Self { dims, cells, faces }
    }

    pub fn to_sset(&self) -> Result<FiniteSimplicialSet> {
        if self.cells.len() != self.dims + 1 {
            bail!("dims is {} but cells lists {} dimensions", self.dims, self.cells.len());
        }
        let mut faces: Vec<Vec<Vec<Simplex>>> = vec![vec![Vec::new(); self.cells[0].len()]];
        for n in 1..=self.dims {
            let mut level = Vec::with_capacity(self.cells[n].len());
            for c in 0..self.cells[n].len() {
                let mut cell_faces = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    let key = format!("{n}/{c}/{i}");
                    let face = self.faces.get(&key).ok_or_else(|| anyhow!("missing face {key}"))?;
                    let cell_dim = (n - 1)
                        .checked_sub(face.degeneracies.len())
                        .ok_or_else(|| anyhow!("face {key} has too many degeneracies"))?;
                    cell_faces.push(Simplex::from_degeneracies(cell_dim, face.cell, &face.degeneracies)?);
                }
                level.push(cell_faces);
            }
            faces.push(level);
        }
        let expected: usize = (1..=self.dims).map(|n| self.cells[n].len() * (n + 1)).sum();
        if self.faces.len() != expected {
            bail!("{} face entries for {expected} faces", self.faces.len());
        }
        Ok(FiniteSimplicialSet::new(self.cells.clone(), faces)?)
    }
}

/// `poset.json`. Only covering relations are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub objects: Vec<String>,
    pub leq: Vec<[usize; 2]>,
}

impl PosetDoc {
    pub fn from_poset(p: &FinPoset) -> Self {
        Self { objects: p.objects().to_vec(), leq: p.hasse().into_iter().map(|(a, b)| [a, b]).collect() }
    }

    pub fn to_poset(&self) -> Result<FinPoset> {
        let pairs: Vec<(usize, usize)> = self.leq.iter().map(|&[a, b]| (a, b)).collect();
        Ok(FinPoset::from_relations(self.objects.clone(), &pairs)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub src: String,
    pub dst: String,
}

/// `catpres.json`. Paths are lists of arrow names in diagrammatic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatPresDoc {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    pub relations: Vec<[Vec<String>; 2]>,
}

impl CatPresDoc {
    /// Relations are written with the smaller path first and sorted.
    pub fn from_presentation(p: &CatPresentation) -> Self {
        let objects = p.objects().to_vec();
        let arrows = p
            .arrows()
            .iter()
            .map(|a| ArrowDoc { name: a.name.clone(), src: objects[a.src].clone(), dst: objects[a.dst].clone() })
            .collect();
        let names = |path: &[usize]| path.iter().map(|&a| p.arrows()[a].name.clone()).collect::<Vec<_>>();
        let mut relations: Vec<[Vec<String>; 2]> = p
            .relations()
            .iter()
            .map(|(l, r)| {
                let (l, r) = (names(l), names(r));
                if l <= r {
                    [l, r]
                } else {
                    [r, l]
                }
            })
            .collect();
        relations.sort();
        relations.dedup();
        Self { objects, arrows, relations }
    }

    pub fn to_presentation(&self) -> Result<CatPresentation> {
        let object =
            |name: &str| self.objects.iter().position(|o| o == name).ok_or_else(|| anyhow!("unknown object {name}"));
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for a in &self.arrows {
            arrows.push(Arrow { name: a.name.clone(), src: object(&a.src)?, dst: object(&a.dst)? });
        }
        let arrow =
            |name: &String| arrows.iter().position(|a| &a.name == name).ok_or_else(|| anyhow!("unknown arrow {name}"));
        let path = |p: &[String]| p.iter().map(arrow).collect::<Result<Vec<_>>>();
        let mut relations = Vec::with_capacity(self.relations.len());
        for [l, r] in &self.relations {
            relations.push((path(l)?, path(r)?));
        }
        Ok(CatPresentation::new(self.objects.clone(), arrows, relations)?)
    }

    /// The presented category, saturated with the default path bound.
    pub fn to_category(&self) -> Result<FinCategory> {
        Ok(saturate(&self.to_presentation()?, DEFAULT_MAX_PATH_LEN)?.category)
    }
}

/// A category file: either a poset or a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryDoc {
    Poset(PosetDoc),
    Presentation(CatPresDoc),
}

impl CategoryDoc {
    pub fn to_category(&self) -> Result<FinCategory> {
        match self {
            Self::Poset(p) => Ok(p.to_poset()?.to_category()),
            Self::Presentation(p) => p.to_category(),
        }
    }
}

/// A monoid pushout problem `M ⊔_{T(K)} T(L)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidProblemDoc {
    pub elements: Vec<String>,
    pub unit: String,
    /// `table[a][b]` is the index of `a·b`.
    pub table: Vec<Vec<usize>>,
    #[serde(rename = "L")]
    pub l: Vec<String>,
    #[serde(rename = "K")]
    pub k: Vec<String>,
    /// Image of each letter of `K` in the monoid.
    pub attach: BTreeMap<String, String>,
}

fn position(names: &[String], name: &str, what: &str) -> Result<usize> {
    names.iter().position(|n| n == name).ok_or_else(|| anyhow!("unknown {what} {name}"))
}

/// `K` as indices into `L`, and the letters of `K` in increasing order.
fn inclusion(l: &[String], k: &[String]) -> Result<(SetInclusion, Vec<String>)> {
    let idx = k.iter().map(|x| position(l, x, "letter")).collect::<Result<Vec<_>>>()?;
    let inc = SetInclusion::new(l.to_vec(), &idx)?;
    let ordered = inc.k().iter().map(|&x| l[x].clone()).collect();
    Ok((inc, ordered))
}

impl MonoidProblemDoc {
    pub fn to_problem(&self) -> Result<MonoidPushoutProblem> {
        let unit = position(&self.elements, &self.unit, "element")?;
        let monoid = FiniteMonoid::new(self.elements.clone(), unit, self.table.clone())?;
        let (inc, ordered) = inclusion(&self.l, &self.k)?;
        let mut attach = Vec::with_capacity(ordered.len());
        for letter in &ordered {
            let target = self.attach.get(letter).ok_or_else(|| anyhow!("letter {letter} of K is not attached"))?;
            attach.push(position(&self.elements, target, "element")?);
        }
        if self.attach.len() != ordered.len() {
            bail!("attach names letters outside K");
        }
        Ok(MonoidPushoutProblem::new(monoid, inc, attach)?)
    }

    pub fn from_problem(p: &MonoidPushoutProblem) -> Self {
        let m = &p.monoid;
        let l = p.inclusion.labels().to_vec();
        let k: Vec<String> = p.inclusion.k().iter().map(|&x| l[x].clone()).collect();
        let attach = k.iter().cloned().zip(p.attach.iter().map(|&e| m.labels()[e].clone())).collect();
        Self {
            elements: m.labels().to_vec(),
            unit: m.labels()[m.unit()].clone(),
            table: m.table().to_vec(),
            l,
            k,
            attach,
        }
    }
}

/// A hom-set filtration instance over a presented category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuroInstanceDoc {
    pub category: CatPresDoc,
    pub a: String,
    pub b: String,
    pub x: String,
    pub y: String,
    #[serde(rename = "L")]
    pub l: Vec<String>,
    #[serde(rename = "K")]
    pub k: Vec<String>,
    /// Image of each letter of `K` as a path `a -> b` of arrow names.
    pub attach: BTreeMap<String, Vec<String>>,
}

impl MuroInstanceDoc {
    pub fn to_problem(&self) -> Result<HomFiltrationProblem> {
        let pres = self.category.to_presentation()?;
        let sat = saturate(&pres, DEFAULT_MAX_PATH_LEN)?;
        let object = |name: &str| position(pres.objects(), name, "object");
        let (a, b) = (object(&self.a)?, object(&self.b)?);
        let (x, y) = (object(&self.x)?, object(&self.y)?);
        let (inc, ordered) = inclusion(&self.l, &self.k)?;
        let mut attach = Vec::with_capacity(ordered.len());
        for letter in &ordered {
            let path = self.attach.get(letter).ok_or_else(|| anyhow!("letter {letter} of K is not attached"))?;
            let arrows = path
                .iter()
                .map(|n| pres.arrow_index(n).ok_or_else(|| anyhow!("unknown arrow {n}")))
                .collect::<Result<Vec<_>>>()?;
            match pres.path_ends(&arrows)? {
                None if a != b => bail!("the empty path does not go from {} to {}", self.a, self.b),
                Some(ends) if ends != (a, b) => {
                    bail!("the path for {letter} does not go from {} to {}", self.a, self.b)
                }
                _ => attach.push(sat.eval_path(a, &arrows)),
            }
        }
        if self.attach.len() != ordered.len() {
            bail!("attach names letters outside K");
        }
        Ok(HomFiltrationProblem::new(Arc::new(sat.category), (a, b), (x, y), inc, attach)?)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("format types serialize")
}
