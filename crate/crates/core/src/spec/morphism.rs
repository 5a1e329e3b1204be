//! Morphisms of affine monoidal spaces `Spec B → Spec A`.

use crate::error::{Error, Result};
use crate::monoid::{hom_enumerate, Monoid, MonoidHom};

use super::sheaf::StructureSheaf;
use super::SpecSpace;

/// The morphism `Spec B → Spec A` induced by `φ: A → B`.
#[derive(Clone, Debug)]
pub struct SpecMorphism {
    pub hom: MonoidHom,
    pub point_map: Vec<usize>,
    pub stalk_maps: Vec<MonoidHom>,
}

/// Index of the prime `φ⁻¹(q)` in `Spec A`.
pub fn preimage_point(phi: &MonoidHom, spec_a: &SpecSpace, spec_b: &SpecSpace, q: usize) -> usize {
    let prime = &spec_b.points()[q];
    let g: Vec<usize> = phi.generators_mapping_into(|e| prime.contains(e));
    spec_a.point_with_generators(&g).expect("preimage of a prime is prime")
}

pub fn spec_morphism(phi: &MonoidHom) -> Result<SpecMorphism> {
    let oa = StructureSheaf::of(phi.source())?;
    let ob = StructureSheaf::of(phi.target())?;
    let (sa, sb) = (oa.space(), ob.space());
    let point_map: Vec<usize> = (0..sb.len()).map(|q| preimage_point(phi, sa, sb, q)).collect();
    let stalk_maps = (0..sb.len())
        .map(|q| {
            let p = point_map[q];
            oa.localization(p).induced(&phi.then(&ob.localization(q).map)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpecMorphism {
        hom: phi.clone(),
        point_map,
        stalk_maps,
    })
}

impl SpecMorphism {
    pub fn is_local(&self) -> bool {
        self.stalk_maps.iter().all(MonoidHom::is_local)
    }
}

/// A local morphism assembled pointwise: a monotone point map with local
/// stalk maps `A_{f(q)} → B_q` compatible with generization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMorphism {
    pub point_map: Vec<usize>,
    pub stalk_maps: Vec<MonoidHom>,
}

impl LocalMorphism {
    /// The global map `A → Γ(Spec B) = B_c ≅ B` at the closed point.
    pub fn global_hom(&self, oa: &StructureSheaf, ob: &StructureSheaf) -> Result<MonoidHom> {
        let c = ob.space().closed_point();
        let to_stalk = oa.localization(self.point_map[c]).map.then(&self.stalk_maps[c])?;
        to_stalk.then(&ob.localization(c).map.inverse()?)
    }
}

fn monotone_maps(sb: &SpecSpace, sa: &SpecSpace) -> Vec<Vec<usize>> {
    let (nb, na) = (sb.len(), sa.len());
    let mut out = Vec::new();
    let mut f = vec![0usize; nb];
    loop {
        let ok = (0..nb).all(|i| (0..nb).all(|j| !sb.leq(i, j) || sa.leq(f[i], f[j])));
        if ok {
            out.push(f.clone());
        }
        let mut pos = 0;
        loop {
            if pos == nb {
                return out;
            }
            f[pos] += 1;
            if f[pos] < na {
                break;
            }
            f[pos] = 0;
            pos += 1;
        }
    }
}

/// All local morphisms `Spec B → Spec A` of monoidal spaces, for finite `B`.
/// Continuity on these finite spaces is monotonicity of the point map.
pub fn local_morphisms(a: &Monoid, b: &Monoid) -> Result<Vec<LocalMorphism>> {
    if !b.is_finite() {
        return Err(Error::Unsupported("local morphisms are enumerated for finite B".into()));
    }
    let oa = StructureSheaf::of(a)?;
    let ob = StructureSheaf::of(b)?;
    let (sa, sb) = (oa.space(), ob.space());
    let covers = sb.covering_pairs();
    let mut out = Vec::new();
    for f in monotone_maps(sb, sa) {
        let choices: Vec<Vec<MonoidHom>> = (0..sb.len())
            .map(|q| {
                Ok(hom_enumerate(oa.stalk(f[q]), ob.stalk(q))?
                    .into_iter()
                    .filter(MonoidHom::is_local)
                    .collect())
            })
            .collect::<Result<_>>()?;
        let mut idx = vec![0usize; sb.len()];
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        loop {
            let maps: Vec<&MonoidHom> = idx.iter().enumerate().map(|(q, &i)| &choices[q][i]).collect();
            let mut natural = true;
            for &(lo, hi) in &covers {
                // A_{f(hi)} → A_{f(lo)} → B_lo  vs  A_{f(hi)} → B_hi → B_lo
                let left = oa.generization(f[hi], f[lo])?.then(maps[lo])?;
                let right = maps[hi].then(&ob.generization(hi, lo)?)?;
                if left != right {
                    natural = false;
                    break;
                }
            }
            if natural {
                out.push(LocalMorphism {
                    point_map: f.clone(),
                    stalk_maps: maps.into_iter().cloned().collect(),
                });
            }
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Ok(out)
}
