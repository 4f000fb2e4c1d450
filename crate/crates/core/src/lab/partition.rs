//! Partition of a box into lattice cells `u + ξ·[m]` plus an error set.
//!
//! `Box(M)` is tiled by the translates `Q_v = S_{mξ} + v·mξ` of the residue
//! square of `mξ`. Each `Q_v` lying entirely inside `Box(M)` splits into
//! the `N(ξ)` cells `s + v·mξ − (1+i)ξ + ξ·[m]`, `s ∈ S_ξ`; every other
//! point goes to the error set.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::BoxSubset;
use crate::error::{domain, Error, Result};
use crate::gaussian::{enumerate_box, ResidueSquare};
use crate::json;
use crate::SmallGaussian;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeCell {
    /// The cell is `base + ξ·[m]`.
    pub base: SmallGaussian,
    /// Index of the tile `Q_v` it came from.
    pub v: SmallGaussian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePartition {
    pub box_side: u64,
    pub xi: SmallGaussian,
    pub m: u64,
    pub cells: Vec<LatticeCell>,
    pub error_set: Vec<SmallGaussian>,
    pub tiles_kept: usize,
    /// Cells are disjoint and, with the error set, cover `Box(M)` once.
    pub exact_cover: bool,
    /// `|E|² ≤ 256·M²·m²·N(ξ)`, the square of `|E| ≤ 16·M·m·|ξ|`.
    pub error_bound_holds: bool,
}

impl LatticePartition {
    pub fn cell_points(&self, cell: &LatticeCell) -> impl Iterator<Item = SmallGaussian> + '_ {
        let base = cell.base;
        enumerate_box::<i64>(self.m).map(move |x| base + (self.xi * x))
    }

    /// Recount every point of every cell and of the error set.
    pub fn verify(&self) -> bool {
        let mut seen: HashSet<SmallGaussian> = HashSet::new();
        let m = self.box_side as i64;
        let inside = |z: &SmallGaussian| z.re >= 1 && z.im >= 1 && z.re <= m && z.im <= m;
        for c in &self.cells {
            for z in self.cell_points(c) {
                if !inside(&z) || !seen.insert(z) {
                    return false;
                }
            }
        }
        for z in &self.error_set {
            if !inside(z) || !seen.insert(*z) {
                return false;
            }
        }
        seen.len() as u64 == self.box_side * self.box_side
    }
}

pub fn lattice_partition(box_side: u64, xi: &SmallGaussian, m: u64) -> Result<LatticePartition> {
    if box_side == 0 || m == 0 {
        return domain("partition needs M ≥ 1 and m ≥ 1");
    }
    if box_side > 4096 || m > 4096 {
        return Err(Error::Limit("partition sizes above 4096 are not supported".into()));
    }
    let mxi = xi.scale(&(m as i64));
    let tile = ResidueSquare::new(mxi)?;
    let fine = ResidueSquare::new(*xi)?;
    let full = (m * m) as i64 * xi.norm();
    let mut groups: BTreeMap<(i64, i64), Vec<SmallGaussian>> = BTreeMap::new();
    for z in enumerate_box::<i64>(box_side) {
        let v = (z - tile.reduce(&z))
            .div_exact(&mxi)
            .expect("z − reduce(z) is a multiple of mξ");
        groups.entry((v.im, v.re)).or_default().push(z);
    }
    let corner = xi.mul_i() + *xi;
    let mut cells = Vec::new();
    let mut error_set = Vec::new();
    let mut tiles_kept = 0;
    for ((vi, vr), pts) in groups {
        let v = SmallGaussian::new(vr, vi);
        if pts.len() as i64 == full {
            tiles_kept += 1;
            let shift = (v * mxi) - corner;
            for s in fine.elements() {
                cells.push(LatticeCell { base: s + shift, v });
            }
        } else {
            error_set.extend(pts);
        }
    }
    error_set.sort_by_key(|z| (z.im, z.re));
    let e = error_set.len() as i128;
    let bound = 256 * (box_side as i128).pow(2) * (m as i128).pow(2) * xi.norm() as i128;
    let mut out = LatticePartition {
        box_side,
        xi: *xi,
        m,
        cells,
        error_set,
        tiles_kept,
        exact_cover: false,
        error_bound_holds: e * e <= bound,
    };
    out.exact_cover = out.verify();
    Ok(out)
}

/// `|A ∩ (n + γ·[m])| / m²`.
pub fn density_on_lattice(a: &BoxSubset, n: &SmallGaussian, gamma: &SmallGaussian, m: u64) -> Result<BigRational> {
    if gamma.re == 0 && gamma.im == 0 {
        return domain("γ must be nonzero");
    }
    if m == 0 {
        return domain("m must be positive");
    }
    let hits = enumerate_box::<i64>(m)
        .filter(|x| a.contains(&(n + &(gamma * x))))
        .count();
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(m * m)))
}

/// The lattice `n + γ·[m]` inside `[N]` on which `A` is densest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BestLattice {
    pub n: SmallGaussian,
    pub gamma: SmallGaussian,
    pub m: u64,
    #[serde(serialize_with = "json::rational")]
    pub density: BigRational,
    pub lattices_scanned: usize,
}

/// Scans every nonzero `γ` and every `n` with `n + γ·[m] ⊆ [N]`; the first
/// maximum in `(γ, n)` row-major order wins.
pub fn best_lattice(a: &BoxSubset, m: u64) -> Result<Option<BestLattice>> {
    if m == 0 {
        return domain("m must be positive");
    }
    let s = a.side() as i64;
    let span = s - 1;
    let gammas: Vec<SmallGaussian> = (-span..=span)
        .flat_map(|b| (-span..=span).map(move |r| SmallGaussian::new(r, b)))
        .filter(|g| g.re != 0 || g.im != 0)
        .collect();
    let found: Vec<Vec<(SmallGaussian, usize)>> = gammas
        .par_iter()
        .map(|g| {
            let mut out = Vec::new();
            // n ranges over a window large enough to hold every placement
            for ni in -s * m as i64..=s {
                for nr in -s * m as i64..=s {
                    let n = SmallGaussian::new(nr, ni);
                    let pts: Vec<SmallGaussian> = enumerate_box::<i64>(m).map(|x| n + (g * &x)).collect();
                    if pts.iter().all(|z| a.in_box(z)) {
                        out.push((n, pts.iter().filter(|z| a.contains(z)).count()));
                    }
                }
            }
            out
        })
        .collect();
    let mut best: Option<(SmallGaussian, SmallGaussian, usize)> = None;
    let mut scanned = 0;
    for (g, list) in gammas.iter().zip(found) {
        for (n, hits) in list {
            scanned += 1;
            if best.as_ref().is_none_or(|b| hits > b.2) {
                best = Some((n, *g, hits));
            }
        }
    }
    Ok(best.map(|(n, gamma, hits)| BestLattice {
        n,
        gamma,
        m,
        density: BigRational::new(BigInt::from(hits), BigInt::from(m * m)),
        lattices_scanned: scanned,
    }))
}
