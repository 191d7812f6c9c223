use crate::error::{Error, Result};
use crate::graph::{wreath_decomposition, Adjacency, CirculantGraph};
use crate::permgroup::{GroupDescription, WreathLabelling};
use crate::zmod::{multiplier_stabilizer, subgroup_generated, Modulus};

use super::prime::aut_prime;

/// The permutation cycling `0 -> d -> 2d -> ...` through the multiples of `d`
/// and fixing every other vertex.
fn subgroup_cycle(n: usize, d: usize) -> Vec<usize> {
    (0..n).map(|v| if v % d == 0 { (v + d) % n } else { v }).collect()
}

/// The factor acting on the `Z_r` coordinate when the other prime's
/// coordinate carries a full symmetric group.
///
/// Such an `X` is determined by two circulants on `Z_r`: the differences
/// with other coordinate 0, and the `Z_r` parts of the remaining differences.
/// The factor is the intersection of their automorphism groups.
fn coordinate_factor(x: &CirculantGraph, r: usize) -> Result<GroupDescription> {
    let other = x.n() / r;
    let mut same: Vec<usize> = x.set().iter().filter(|&&d| d % other == 0).map(|&d| d % r).collect();
    let mut cross: Vec<usize> = x
        .set()
        .iter()
        .filter(|&&d| d % other != 0)
        .map(|&d| d % r)
        .filter(|&d| d != 0)
        .collect();
    for t in [&mut same, &mut cross] {
        t.sort_unstable();
        t.dedup();
    }
    let extreme = |t: &[usize]| t.is_empty() || t.len() == r - 1;
    if extreme(&same) && extreme(&cross) {
        return Ok(GroupDescription::symmetric(r));
    }
    let modulus = Modulus::new(r)?;
    let a = multiplier_stabilizer(&modulus, &same);
    let b = multiplier_stabilizer(&modulus, &cross);
    let common: Vec<usize> = a.elements().iter().copied().filter(|&k| b.contains(k)).collect();
    let common = subgroup_generated(&modulus, &common)?;
    Ok(GroupDescription::holomorph(&common))
}

/// `Aut(X)` for a circulant on `pq` vertices, `p < q` distinct primes.
pub fn aut_pq(x: &CirculantGraph) -> Result<GroupDescription> {
    x.require_plain("the pq solver")?;
    let n = x.n();
    let Some((p, q)) = x.modulus().as_two_primes() else {
        return Err(Error::Precondition(format!(
            "the pq solver needs a product of two distinct primes, got {n}"
        )));
    };
    if x.set().is_empty() || x.set().len() == n - 1 {
        return Ok(GroupDescription::symmetric(n));
    }
    // A block of the order-d subgroup can be rotated on its own: X is a
    // wreath product with inner factor on d vertices.
    for (step, d) in [(p, q), (q, p)] {
        if x.preserved_by(&subgroup_cycle(n, step)) {
            if let Some((outer, inner)) = wreath_decomposition(x, d)? {
                return Ok(GroupDescription::wreath(
                    aut_prime(&outer)?,
                    aut_prime(&inner)?,
                    WreathLabelling::Coset,
                ));
            }
        }
    }
    let a = multiplier_stabilizer(x.modulus(), x.set());
    if a.congruent_to_one(q).len() == p - 1 {
        let on_q = coordinate_factor(x, q)?;
        return Ok(GroupDescription::direct(GroupDescription::symmetric(p), on_q));
    }
    if a.congruent_to_one(p).len() == q - 1 {
        let on_p = coordinate_factor(x, p)?;
        return Ok(GroupDescription::direct(on_p, GroupDescription::symmetric(q)));
    }
    Ok(GroupDescription::holomorph(&a))
}
