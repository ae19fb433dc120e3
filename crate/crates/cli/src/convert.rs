//! Blocks to engine values and back.

use cvxcore::polyrep::{GeneratorRep, HRep};
use cvxcore::semiset::{ConvexCell, SemilinearSet};
use cvxcore::sephull::{PwlFunction, PwlMode};
use cvxcore::vopt::{ConeBase, Image, OrderingCone, VopInstance};
use cvxcore::{CvxError, QVector, Result};

use crate::format::{from_qs, to_qs, Block, ImageKind, InstanceFile, Kind, Piece, PwlKind, Row};

fn missing(tag: &str, name: &str) -> CvxError {
    CvxError::InvalidInput(format!("no {tag} block named {name:?}"))
}

fn vectors(vs: &[Vec<crate::format::Q>]) -> Vec<QVector> {
    vs.iter().map(|v| from_qs(v)).collect()
}

pub fn set_from_block(dim: usize, b: &Block) -> Result<SemilinearSet> {
    let Block::Set { cells, .. } = b else {
        return Err(CvxError::InvalidInput(format!("expected a set block, found {}", b.tag())));
    };
    let cells = cells
        .iter()
        .map(|rows| ConvexCell::new(dim, rows.iter().map(Row::to_constraint).collect()))
        .collect::<Result<Vec<_>>>()?;
    SemilinearSet::new(dim, cells)
}

pub fn set_block(name: &str, s: &SemilinearSet) -> Block {
    Block::Set {
        name: name.into(),
        cells: s
            .cells()
            .iter()
            .map(|c| c.constraints().iter().map(Row::from_constraint).collect())
            .collect(),
    }
}

impl InstanceFile {
    /// The named set, or the first set when `name` is `None`.
    pub fn set(&self, name: Option<&str>) -> Result<SemilinearSet> {
        let block = match name {
            Some(n) => self.named(n).ok_or_else(|| missing("set", n))?,
            None => self
                .blocks
                .iter()
                .find(|b| matches!(b, Block::Set { .. }))
                .ok_or_else(|| CvxError::InvalidInput("file has no set block".into()))?,
        };
        set_from_block(self.dim, block)
    }

    pub fn polytope(&self, name: &str) -> Result<GeneratorRep> {
        match self.named(name) {
            Some(Block::Polytope { vertices, .. }) => GeneratorRep::polytope(self.dim, vectors(vertices)),
            _ => Err(missing("polytope", name)),
        }
    }

    pub fn pwl(&self, name: &str) -> Result<PwlFunction> {
        match self.named(name) {
            Some(Block::Pwl { mode, pieces, .. }) => {
                let mode = match mode {
                    PwlKind::Max => PwlMode::Max,
                    PwlKind::Min => PwlMode::Min,
                };
                let pieces = pieces.iter().map(|p| (from_qs(&p.c), p.d.0.clone())).collect();
                PwlFunction::new(self.dim, pieces, mode)
            }
            _ => Err(missing("pwl", name)),
        }
    }

    pub fn hrep(&self, name: &str) -> Result<HRep> {
        match self.named(name) {
            Some(Block::Hrep { rows, .. }) => HRep::new(self.dim, rows.iter().map(Row::to_constraint).collect()),
            _ => Err(missing("hrep", name)),
        }
    }

    pub fn has(&self, name: &str) -> bool {
        self.named(name).is_some()
    }

    pub fn vector(&self, name: &str) -> Result<QVector> {
        match self.named(name) {
            Some(Block::Vector { v, .. }) => Ok(from_qs(v)),
            _ => Err(missing("vector", name)),
        }
    }

    pub fn vop(&self) -> Result<VopInstance> {
        let mut cone = None;
        let mut base = None;
        let mut image = None;
        for b in &self.blocks {
            match b {
                Block::Cone { generators } => cone = Some(vectors(generators)),
                Block::Base { vertices } => base = Some(vectors(vertices)),
                Block::Image { kind, points } => image = Some((*kind, vectors(points))),
                _ => {}
            }
        }
        let cone = OrderingCone::new(
            self.dim,
            cone.ok_or_else(|| CvxError::InvalidInput("vop file has no cone block".into()))?,
        )?;
        let base = base.map(|v| ConeBase::new(&cone, v)).transpose()?;
        let image = match image.ok_or_else(|| CvxError::InvalidInput("vop file has no image block".into()))? {
            (ImageKind::Finite, points) => Image::Finite(points),
            (ImageKind::Polytope, points) => Image::Polytope(GeneratorRep::polytope(self.dim, points)?),
        };
        VopInstance::new(image, cone, base)
    }
}

pub fn sets_file(dim: usize, sets: &[(&str, &SemilinearSet)]) -> InstanceFile {
    InstanceFile {
        kind: Kind::Set,
        dim,
        blocks: sets.iter().map(|(n, s)| set_block(n, s)).collect(),
    }
}

pub fn polytope_block(name: &str, g: &GeneratorRep) -> Block {
    Block::Polytope {
        name: name.into(),
        vertices: g.vertices.iter().map(to_qs).collect(),
    }
}

pub fn pwl_block(name: &str, f: &PwlFunction) -> Block {
    Block::Pwl {
        name: name.into(),
        mode: match f.mode {
            PwlMode::Max => PwlKind::Max,
            PwlMode::Min => PwlKind::Min,
        },
        pieces: f
            .pieces
            .iter()
            .map(|(c, d)| Piece {
                c: to_qs(c),
                d: crate::format::Q(d.clone()),
            })
            .collect(),
    }
}

pub fn vop_file(inst: &VopInstance) -> InstanceFile {
    let mut blocks = vec![Block::Cone {
        generators: inst.cone.generators.iter().map(to_qs).collect(),
    }];
    if let Some(b) = &inst.base {
        blocks.push(Block::Base {
            vertices: b.polytope.vertices.iter().map(to_qs).collect(),
        });
    }
    let kind = if inst.image.is_polytope() {
        ImageKind::Polytope
    } else {
        ImageKind::Finite
    };
    blocks.push(Block::Image {
        kind,
        points: inst.image.generators().iter().map(to_qs).collect(),
    });
    InstanceFile {
        kind: Kind::Vop,
        dim: inst.dim,
        blocks,
    }
}
