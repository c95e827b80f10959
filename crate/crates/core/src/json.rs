//! JSON file formats: modules, polytopes, Lusztig data, crystal graphs.
//! Vertices and word letters are 1-based on disk; primed vertices are written
//! `"k'"`. Matrix entries are row-major integers, reduced into the prime field
//! on load.

use crate::cartan::{RootSystem, WeightVec};
use crate::crystal::CrystalGraph;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::Matrix;
use crate::ngamma::ModuleCtx;
use crate::pimod::PiModule;
use crate::polytope::{vertices_from_hyperplanes, HyperplaneDatum, LusztigDatum};
use crate::quiver::Quiver;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct QuiverSpec {
    #[serde(rename = "type")]
    pub type_name: String,
    pub rank: usize,
    pub orientation: Vec<(usize, usize)>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct ModuleFile {
    pub field_prime: u64,
    pub quiver: QuiverSpec,
    pub dims: BTreeMap<String, usize>,
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct GammaValue {
    pub gamma: Vec<i64>,
    pub value: i64,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct VertexEntry {
    pub w: Vec<usize>,
    pub mu: Vec<i64>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct PolytopeFile {
    #[serde(rename = "type")]
    pub type_name: String,
    pub weight: Vec<i64>,
    pub hyperplane: Vec<GammaValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<VertexEntry>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct LusztigFile {
    pub word: Vec<usize>,
    pub n: Vec<i64>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct CrystalNode {
    pub id: usize,
    pub weight: Vec<i64>,
    pub hyperplane: Vec<GammaValue>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct CrystalEdge {
    pub from: usize,
    pub to: usize,
    pub i: usize,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
pub struct CrystalFile {
    #[serde(rename = "type")]
    pub type_name: String,
    pub height_bound: i64,
    pub nodes: Vec<CrystalNode>,
    pub edges: Vec<CrystalEdge>,
}

fn vertex_name(v: usize, base: usize) -> String {
    if v < base {
        format!("{}", v + 1)
    } else {
        format!("{}'", v - base + 1)
    }
}

fn parse_vertex(name: &str, base: usize, n: usize) -> Result<usize> {
    let err = || Error::Invalid(format!("bad vertex name {name:?}"));
    let (digits, primed) = match name.strip_suffix('\'') {
        Some(d) => (d, true),
        None => (name, false),
    };
    let k: usize = digits.parse().map_err(|_| err())?;
    if k < 1 || k > base {
        return Err(err());
    }
    let v = if primed { base + k - 1 } else { k - 1 };
    if v >= n {
        return Err(err());
    }
    Ok(v)
}

fn arrow_name(k: usize, base_arrows: usize) -> String {
    if k < base_arrows {
        format!("a{}", k + 1)
    } else {
        format!("d{}", k - base_arrows + 1)
    }
}

fn parse_arrow(name: &str, base_arrows: usize, total: usize) -> Result<(usize, bool)> {
    let err = || Error::Invalid(format!("bad arrow name {name:?}"));
    let (body, starred) = match name.strip_suffix('*') {
        Some(b) => (b, true),
        None => (name, false),
    };
    let (kind, digits) = body.split_at(1);
    let k: usize = digits.parse().map_err(|_| err())?;
    if k < 1 {
        return Err(err());
    }
    let idx = match kind {
        "a" => k - 1,
        "d" => base_arrows + k - 1,
        _ => return Err(err()),
    };
    if idx >= total {
        return Err(err());
    }
    Ok((idx, starred))
}

pub fn module_to_file(m: &PiModule<PrimeField>, rs: &RootSystem) -> ModuleFile {
    let base = m.quiver.base;
    let base_arrows = if m.quiver.is_extended() {
        m.quiver.arrows.len() - base
    } else {
        m.quiver.arrows.len()
    };
    let orientation: Vec<(usize, usize)> = m.quiver.arrows[..base_arrows]
        .iter()
        .map(|&(s, t)| (s + 1, t + 1))
        .collect();
    let mut dims = BTreeMap::new();
    for v in 0..m.quiver.n {
        dims.insert(vertex_name(v, base), m.dims[v]);
    }
    let mut maps = BTreeMap::new();
    let f = m.field;
    let emit = |mat: &Matrix<PrimeField>| -> Vec<Vec<i64>> {
        (0..mat.rows())
            .map(|r| (0..mat.cols()).map(|c| f.to_i64(mat.get(r, c)).unwrap()).collect())
            .collect()
    };
    for (k, &(_, _)) in m.quiver.arrows.iter().enumerate() {
        if m.fwd[k].rows() * m.fwd[k].cols() > 0 {
            maps.insert(arrow_name(k, base_arrows), emit(&m.fwd[k]));
        }
        if m.bwd[k].rows() * m.bwd[k].cols() > 0 {
            maps.insert(format!("{}*", arrow_name(k, base_arrows)), emit(&m.bwd[k]));
        }
    }
    ModuleFile {
        field_prime: m.field.modulus(),
        quiver: QuiverSpec { type_name: rs.type_name(), rank: rs.rank(), orientation },
        dims,
        maps,
    }
}

/// Rebuilds the root system, quiver (extended when primed vertices occur) and
/// module from a file. Entries are reduced modulo the file's prime.
pub fn module_from_file(file: &ModuleFile) -> Result<(RootSystem, Quiver, PiModule<PrimeField>)> {
    let rs = RootSystem::from_type(&file.quiver.type_name)?;
    if rs.rank() != file.quiver.rank {
        return Err(Error::Invalid("rank does not match the type".into()));
    }
    let field = PrimeField::new(file.field_prime)?;
    let n = rs.rank();
    let base_arrows: Vec<(usize, usize)> = file
        .quiver
        .orientation
        .iter()
        .map(|&(s, t)| {
            if s < 1 || t < 1 || s > n || t > n {
                Err(Error::Invalid(format!("bad arrow {s}->{t}")))
            } else {
                Ok((s - 1, t - 1))
            }
        })
        .collect::<Result<_>>()?;
    let base = Quiver::new(n, base_arrows);
    base.check_orientation(rs.dynkin())?;

    let extended = file.dims.keys().any(|k| k.ends_with('\''));
    let quiver = if extended { base.extended() } else { base.clone() };
    let mut dims = vec![0usize; quiver.n];
    for (name, &d) in &file.dims {
        dims[parse_vertex(name, n, quiver.n)?] = d;
    }
    let mut m = PiModule::zero(field, quiver.clone(), dims.clone());
    let nb = base.arrows.len();
    for (name, rows) in &file.maps {
        let (k, starred) = parse_arrow(name, nb, quiver.arrows.len())?;
        let (s, t) = quiver.arrows[k];
        let (er, ec) = if starred { (dims[s], dims[t]) } else { (dims[t], dims[s]) };
        if rows.len() != er || rows.iter().any(|r| r.len() != ec) {
            return Err(Error::ShapeMismatch(format!("map {name}: expected {er}x{ec}")));
        }
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        let mat = Matrix::from_i64(field, er, ec, &flat);
        if starred {
            m.bwd[k] = mat;
        } else {
            m.fwd[k] = mat;
        }
    }
    m.validate()?;
    Ok((rs, base, m))
}

pub fn polytope_to_file(rs: &RootSystem, datum: &HyperplaneDatum, with_vertices: bool) -> Result<PolytopeFile> {
    let hyperplane = rs
        .chamber_weights()
        .iter()
        .zip(&datum.values)
        .map(|(g, &v)| GammaValue { gamma: g.0.clone(), value: v })
        .collect();
    let vertices = if with_vertices {
        let vd = vertices_from_hyperplanes(rs, datum)?;
        rs.elements()?
            .iter()
            .zip(&vd.mu)
            .map(|(w, mu)| VertexEntry {
                w: w.word().iter().map(|&j| j + 1).collect(),
                mu: mu.0.clone(),
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(PolytopeFile {
        type_name: rs.type_name(),
        weight: datum.weight(rs)?.0,
        hyperplane,
        vertices,
    })
}

pub fn polytope_from_file(file: &PolytopeFile) -> Result<(RootSystem, HyperplaneDatum)> {
    let rs = RootSystem::from_type(&file.type_name)?;
    let mut datum = HyperplaneDatum::zero(&rs);
    let mut seen = vec![false; datum.values.len()];
    for gv in &file.hyperplane {
        let g = WeightVec(gv.gamma.clone());
        let idx = rs
            .chamber_index(&g)
            .ok_or_else(|| Error::Invalid(format!("{:?} is not a chamber weight", gv.gamma)))?;
        datum.values[idx] = gv.value;
        seen[idx] = true;
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::Invalid("hyperplane datum is missing chamber weights".into()));
    }
    Ok((rs, datum))
}

pub fn lusztig_from_file(rs: &RootSystem, file: &LusztigFile) -> Result<LusztigDatum> {
    if file.word.iter().any(|&j| j < 1 || j > rs.rank()) {
        return Err(Error::Invalid("word letters are 1-based vertex labels".into()));
    }
    LusztigDatum::new(rs, file.word.iter().map(|&j| j - 1).collect(), file.n.clone())
}

pub fn lusztig_to_file(d: &LusztigDatum) -> LusztigFile {
    LusztigFile { word: d.word.iter().map(|&j| j + 1).collect(), n: d.n.clone() }
}

pub fn crystal_to_file(rs: &RootSystem, graph: &CrystalGraph, height_bound: i64) -> CrystalFile {
    let nodes = graph
        .nodes
        .iter()
        .enumerate()
        .map(|(id, node)| CrystalNode {
            id,
            weight: graph.weights[id].0.clone(),
            hyperplane: rs
                .chamber_weights()
                .iter()
                .zip(&node.datum.values)
                .map(|(g, &v)| GammaValue { gamma: g.0.clone(), value: v })
                .collect(),
        })
        .collect();
    let edges = graph
        .edges
        .iter()
        .map(|&(from, to, i)| CrystalEdge { from, to, i: i + 1 })
        .collect();
    CrystalFile { type_name: rs.type_name(), height_bound, nodes, edges }
}

/// Context for a module file: the root system plus its orientation and prime.
pub fn ctx_from_file(file: &ModuleFile) -> Result<(ModuleCtx<PrimeField>, PiModule<PrimeField>)> {
    let (rs, base, m) = module_from_file(file)?;
    let field = PrimeField::new(file.field_prime)?;
    let ctx = ModuleCtx::new(rs, base, field)?;
    Ok((ctx, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;

    #[test]
    fn module_round_trip() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let ctx = ModuleCtx::with_default_orientation(rs, PrimeField::default_prime());
        let m = crate::sampler::random_pi_module(&ctx.field, &ctx.quiver, 3, 7);
        let file = module_to_file(&m, &ctx.rs);
        let (_, _, back) = module_from_file(&file).unwrap();
        assert_eq!(back, m);
        // negative entries reduce mod p
        let json = serde_json::to_string(&file).unwrap();
        let parsed: ModuleFile = serde_json::from_str(&json).unwrap();
        let (_, _, again) = module_from_file(&parsed).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn extended_module_round_trip() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let ctx = ModuleCtx::with_default_orientation(rs, PrimeField::default_prime());
        let m = ctx.nhat(&WeightVec(vec![1, -1]));
        let file = module_to_file(m.as_ref(), &ctx.rs);
        assert!(file.dims.contains_key("1'"));
        let (_, _, back) = module_from_file(&file).unwrap();
        assert_eq!(&back, m.as_ref());
    }

    #[test]
    fn polytope_round_trip() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let ctx = ModuleCtx::with_default_orientation(rs, PrimeField::default_prime());
        let m = crate::sampler::random_pi_module(&ctx.field, &ctx.quiver, 3, 11);
        let datum = crate::polytope::polytope_of_module(&ctx, &m);
        let file = polytope_to_file(&ctx.rs, &datum, true).unwrap();
        assert_eq!(file.vertices.len(), 6);
        let (_, back) = polytope_from_file(&file).unwrap();
        assert_eq!(back, datum);
    }

    #[test]
    fn bad_files_rejected() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        let ctx = ModuleCtx::with_default_orientation(rs, PrimeField::default_prime());
        let m = ctx.simple(0);
        let mut file = module_to_file(&m, &ctx.rs);
        file.maps.insert("a9".into(), vec![vec![1]]);
        assert!(module_from_file(&file).is_err());
        let mut file2 = module_to_file(&m, &ctx.rs);
        file2.field_prime = 10;
        assert!(module_from_file(&file2).is_err());
    }
}
