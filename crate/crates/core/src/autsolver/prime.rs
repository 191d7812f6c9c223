use crate::error::{Error, Result};
use crate::graph::CirculantGraph;
use crate::permgroup::GroupDescription;
use crate::zmod::multiplier_stabilizer;

/// `Aut(X)` for a circulant of prime order `p`.
///
/// `S_p` when `S` is empty or all of `Z_p^*`; otherwise the affine maps
/// `T_{a,b}` whose multiplier `a` stabilizes `S`.
pub fn aut_prime(x: &CirculantGraph) -> Result<GroupDescription> {
    x.require_plain("the prime-order solver")?;
    let p = x.n();
    if !x.modulus().is_prime() {
        return Err(Error::Precondition(format!("the prime-order solver needs a prime, got {p}")));
    }
    let a = multiplier_stabilizer(x.modulus(), x.set());
    if x.set().is_empty() || a.len() == p - 1 {
        Ok(GroupDescription::symmetric(p))
    } else {
        Ok(GroupDescription::holomorph(&a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn order(n: usize, s: &[usize]) -> BigUint {
        aut_prime(&CirculantGraph::undirected(n, s).unwrap()).unwrap().realize().unwrap().order()
    }

    #[test]
    fn examples() {
        let x = CirculantGraph::undirected(5, &[]).unwrap();
        assert_eq!(aut_prime(&x).unwrap(), GroupDescription::symmetric(5));
        let x = CirculantGraph::undirected(5, &[1, 4]).unwrap();
        assert_eq!(
            aut_prime(&x).unwrap(),
            GroupDescription::HolomorphSubgroup { n: 5, multipliers: vec![1, 4] }
        );
        assert_eq!(order(5, &[1, 4]), BigUint::from(10u32));
        assert_eq!(order(13, &[1, 3, 4, 9, 10, 12]), BigUint::from(78u32));
        assert_eq!(order(13, &[1, 5, 8, 12]), BigUint::from(52u32));
        assert_eq!(order(7, &[1, 2, 3, 4, 5, 6]), BigUint::from(5040u32));
        assert_eq!(order(2, &[1]), BigUint::from(2u32));
    }

    #[test]
    fn rejects_composite_and_directed() {
        assert!(aut_prime(&CirculantGraph::undirected(6, &[1, 5]).unwrap()).is_err());
        assert!(aut_prime(&CirculantGraph::new(5, &[1], true).unwrap()).is_err());
    }
}
