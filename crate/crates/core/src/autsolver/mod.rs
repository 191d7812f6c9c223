//! Automorphism groups of circulants: prime order, `pq`, square-free order,
//! and a dispatcher that falls back on the oracle for other orders.

mod pq;
mod prime;
mod squarefree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::CirculantGraph;
use crate::oracle::{brute_force_aut, SearchBudget};
use crate::permgroup::GroupDescription;

pub use pq::aut_pq;
pub use prime::aut_prime;
pub use squarefree::{aut_squarefree, compute_ep, merge_symmetric_primes, SquareFreeWorkspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Prime,
    Pq,
    Squarefree,
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Prime => "prime",
            Method::Pq => "pq",
            Method::Squarefree => "squarefree",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Method::Auto),
            "prime" => Ok(Method::Prime),
            "pq" => Ok(Method::Pq),
            "squarefree" => Ok(Method::Squarefree),
            "oracle" => Ok(Method::Oracle),
            other => Err(Error::Precondition(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub method: Method,
    /// Bounds for the oracle fallback.
    pub budget: SearchBudget,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            method: Method::Auto,
            budget: SearchBudget::default(),
        }
    }
}

impl SolverConfig {
    pub fn with_method(method: Method) -> Self {
        SolverConfig {
            method,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub description: GroupDescription,
    /// The solver whose answer is returned.
    pub method: Method,
    /// Set when two solvers were run and found to agree.
    pub cross_checked: bool,
}

fn oracle_solution(x: &CirculantGraph, budget: &SearchBudget) -> Result<Solution> {
    let group = brute_force_aut(x, budget)?;
    Ok(Solution {
        description: GroupDescription::generated_by(x.n(), group.generators().to_vec()),
        method: Method::Oracle,
        cross_checked: false,
    })
}

fn single(description: GroupDescription, method: Method) -> Solution {
    Solution {
        description,
        method,
        cross_checked: false,
    }
}

/// `Aut(X)` by the method in `config`.
///
/// `Auto` picks the prime solver for prime `n` and the square-free solver
/// for square-free composite `n`; when `n = pq` the `pq` solver runs as well,
/// the two answers must generate the same group, and the structured `pq`
/// answer is returned. Other orders go to the oracle if within its vertex
/// bound.
pub fn aut(x: &CirculantGraph, config: &SolverConfig) -> Result<Solution> {
    let n = x.n();
    let modulus = x.modulus();
    match config.method {
        Method::Prime => Ok(single(aut_prime(x)?, Method::Prime)),
        Method::Pq => Ok(single(aut_pq(x)?, Method::Pq)),
        Method::Squarefree => Ok(single(aut_squarefree(x)?, Method::Squarefree)),
        Method::Oracle => oracle_solution(x, &config.budget),
        Method::Auto => {
            x.require_plain("automorphism solvers")?;
            if modulus.is_prime() {
                return Ok(single(aut_prime(x)?, Method::Prime));
            }
            if n > 1 && modulus.is_squarefree() {
                let general = aut_squarefree(x)?;
                if modulus.as_two_primes().is_none() {
                    return Ok(single(general, Method::Squarefree));
                }
                let structured = aut_pq(x)?;
                if !structured.realize()?.same_group(&general.realize()?) {
                    return Err(Error::CrossCheckMismatch {
                        n,
                        set: x.set().to_vec(),
                    });
                }
                return Ok(Solution {
                    description: structured,
                    method: Method::Pq,
                    cross_checked: true,
                });
            }
            if n <= config.budget.max_vertices {
                return oracle_solution(x, &config.budget);
            }
            Err(Error::UnsupportedOrder(n))
        }
    }
}
