use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{factorial, PermGroup, Permutation};
use crate::error::{Error, Result};
use crate::zmod::{factorize, subgroup_generated, UnitSubgroup};

/// How the points of a wreath product are labelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WreathLabelling {
    /// `(u, v)` is point `u * |V| + v`.
    Product,
    /// `(u, v)` is the residue `u + |U| * v` of `Z_{|U||V|}`, so fibres are the
    /// cosets of the order-`|V|` subgroup.
    Coset,
}

/// A symbolic permutation group that can be realized on explicit points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupDescription {
    Symmetric {
        degree: usize,
    },
    /// `{T_{a,b} : a in multipliers, b in Z_n}`.
    #[serde(rename = "holomorph")]
    HolomorphSubgroup { n: usize, multipliers: Vec<usize> },
    Wreath {
        outer: Box<GroupDescription>,
        inner: Box<GroupDescription>,
        labelling: WreathLabelling,
    },
    /// `left × right` acting on `Z_{m r}` through the CRT split at `m`.
    #[serde(rename = "direct")]
    DirectProduct {
        left: Box<GroupDescription>,
        right: Box<GroupDescription>,
        m: usize,
    },
    #[serde(rename = "generators")]
    GeneratedBy {
        degree: usize,
        generators: Vec<Permutation>,
    },
}

impl GroupDescription {
    pub fn symmetric(degree: usize) -> Self {
        GroupDescription::Symmetric { degree }
    }

    pub fn holomorph(multipliers: &UnitSubgroup) -> Self {
        GroupDescription::HolomorphSubgroup {
            n: multipliers.n(),
            multipliers: multipliers.elements().to_vec(),
        }
    }

    pub fn wreath(outer: GroupDescription, inner: GroupDescription, labelling: WreathLabelling) -> Self {
        GroupDescription::Wreath {
            outer: Box::new(outer),
            inner: Box::new(inner),
            labelling,
        }
    }

    pub fn direct(left: GroupDescription, right: GroupDescription) -> Self {
        let m = left.degree();
        GroupDescription::DirectProduct {
            left: Box::new(left),
            right: Box::new(right),
            m,
        }
    }

    /// Generators sorted by image array, duplicates and identities dropped.
    pub fn generated_by(degree: usize, mut generators: Vec<Permutation>) -> Self {
        generators.retain(|g| !g.is_identity());
        generators.sort();
        generators.dedup();
        GroupDescription::GeneratedBy { degree, generators }
    }

    pub fn degree(&self) -> usize {
        match self {
            GroupDescription::Symmetric { degree } => *degree,
            GroupDescription::HolomorphSubgroup { n, .. } => *n,
            GroupDescription::Wreath { outer, inner, .. } => outer.degree() * inner.degree(),
            GroupDescription::DirectProduct { left, right, .. } => left.degree() * right.degree(),
            GroupDescription::GeneratedBy { degree, .. } => *degree,
        }
    }

    /// Order read off the description; `GeneratedBy` falls back to the chain.
    pub fn symbolic_order(&self) -> Result<BigUint> {
        Ok(match self {
            GroupDescription::Symmetric { degree } => factorial(*degree),
            GroupDescription::HolomorphSubgroup { n, multipliers } => {
                BigUint::from(*n) * BigUint::from(multipliers.len().max(1))
            }
            GroupDescription::Wreath { outer, inner, .. } => {
                outer.symbolic_order()? * num_traits::pow(inner.symbolic_order()?, outer.degree())
            }
            GroupDescription::DirectProduct { left, right, .. } => {
                left.symbolic_order()? * right.symbolic_order()?
            }
            GroupDescription::GeneratedBy { .. } => self.realize()?.order(),
        })
    }

    pub fn realize(&self) -> Result<PermGroup> {
        match self {
            GroupDescription::Symmetric { degree } => Ok(PermGroup::symmetric(*degree)),
            GroupDescription::HolomorphSubgroup { n, multipliers } => {
                let modulus = factorize(*n)?;
                let subgroup = subgroup_generated(&modulus, multipliers)?;
                if *n >= 2 && subgroup.elements() != multipliers.as_slice() {
                    return Err(Error::Precondition(format!(
                        "multipliers {multipliers:?} do not form a subgroup of Z_{n}^*"
                    )));
                }
                let mut gens = Vec::new();
                if *n >= 2 {
                    gens.push(Permutation::rotation(*n));
                }
                for a in subgroup.generators() {
                    gens.push(Permutation::affine(&modulus, a, 0)?);
                }
                PermGroup::new(*n, gens)
            }
            GroupDescription::Wreath {
                outer,
                inner,
                labelling,
            } => {
                let group = PermGroup::wreath(&outer.realize()?, &inner.realize()?);
                Ok(match labelling {
                    WreathLabelling::Product => group,
                    WreathLabelling::Coset => {
                        let (a, b) = (outer.degree(), inner.degree());
                        let map: Vec<usize> = (0..a * b).map(|idx| idx / b + a * (idx % b)).collect();
                        group.relabel(&map)
                    }
                })
            }
            GroupDescription::DirectProduct { left, right, m } => {
                if left.degree() != *m {
                    return Err(Error::DegreeMismatch {
                        expected: *m,
                        found: left.degree(),
                    });
                }
                PermGroup::direct_product_crt(&left.realize()?, &right.realize()?)
            }
            GroupDescription::GeneratedBy { degree, generators } => {
                PermGroup::new(*degree, generators.clone())
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GroupDescription::Symmetric { .. } => "symmetric",
            GroupDescription::HolomorphSubgroup { .. } => "holomorph",
            GroupDescription::Wreath { .. } => "wreath",
            GroupDescription::DirectProduct { .. } => "direct",
            GroupDescription::GeneratedBy { .. } => "generators",
        }
    }

    fn is_atomic(&self) -> bool {
        matches!(
            self,
            GroupDescription::Symmetric { .. }
                | GroupDescription::HolomorphSubgroup { .. }
                | GroupDescription::GeneratedBy { .. }
        )
    }
}

impl fmt::Display for GroupDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |d: &GroupDescription| {
            if d.is_atomic() {
                d.to_string()
            } else {
                format!("({d})")
            }
        };
        match self {
            GroupDescription::Symmetric { degree } => write!(f, "S_{degree}"),
            GroupDescription::HolomorphSubgroup { n, multipliers } => {
                let a: Vec<String> = multipliers.iter().map(|x| x.to_string()).collect();
                write!(f, "{{T_{{a,b}} : a ∈ {{{}}}, b ∈ Z_{n}}}", a.join(","))
            }
            GroupDescription::Wreath { outer, inner, .. } => {
                write!(f, "{} ≀ {}", wrap(outer), wrap(inner))
            }
            GroupDescription::DirectProduct { left, right, .. } => {
                write!(f, "{} × {}", wrap(left), wrap(right))
            }
            GroupDescription::GeneratedBy { degree, generators } => {
                write!(f, "⟨{} generators⟩ ≤ S_{degree}", generators.len())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::factorize;

    #[test]
    fn realize_examples() {
        assert_eq!(GroupDescription::symmetric(3).realize().unwrap().order(), BigUint::from(6u32));
        let a = subgroup_generated(&factorize(5).unwrap(), &[4]).unwrap();
        let hol = GroupDescription::holomorph(&a);
        assert_eq!(hol.realize().unwrap().order(), BigUint::from(10u32));
        assert_eq!(hol.symbolic_order().unwrap(), BigUint::from(10u32));
        let w = GroupDescription::wreath(
            GroupDescription::symmetric(2),
            GroupDescription::symmetric(3),
            WreathLabelling::Product,
        );
        assert_eq!(w.realize().unwrap().order(), BigUint::from(72u32));
        assert_eq!(w.symbolic_order().unwrap(), BigUint::from(72u32));
        let bad = GroupDescription::HolomorphSubgroup {
            n: 7,
            multipliers: vec![1, 2],
        };
        assert!(bad.realize().is_err());
        let mismatched = GroupDescription::DirectProduct {
            left: Box::new(GroupDescription::symmetric(2)),
            right: Box::new(GroupDescription::symmetric(3)),
            m: 3,
        };
        assert!(mismatched.realize().is_err());
    }

    #[test]
    fn display_notation() {
        let a = subgroup_generated(&factorize(15).unwrap(), &[14]).unwrap();
        assert_eq!(
            GroupDescription::holomorph(&a).to_string(),
            "{T_{a,b} : a ∈ {1,14}, b ∈ Z_15}"
        );
        let w = GroupDescription::wreath(
            GroupDescription::symmetric(2),
            GroupDescription::symmetric(3),
            WreathLabelling::Coset,
        );
        assert_eq!(w.to_string(), "S_2 ≀ S_3");
    }
}
