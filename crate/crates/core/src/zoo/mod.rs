//! Concrete semigroups: finite tables, multiplication oracles for the
//! infinite examples, and their closed-form Green's relations.

mod finite;
mod infinite;
mod squarefree;

pub use finite::{
    b2, b2_with_identity, left_zero, mn_size_formula, mn_table, monogenic_monoid, null_semigroup, random_maps,
    right_zero, transformation_semigroup, PartialBijections, PartialMap, Transformations,
    MAX_TRANSFORMATION_DEGREE,
};
pub use infinite::{
    bicyclic_d_witness, bicyclic_green, bicyclic_mult, p_green, p_mult, p_unary, product_x_y, Bicyclic,
    BicyclicOracle, DWitness, POracle,
};
pub use squarefree::{
    free_nil, is_square_free, letters_to_string, pattern_instance_free, squarefree_factors, squarefree_word,
    string_to_letters, sw_semigroup, MAX_NIL_ELEMENTS, MAX_PATTERN_LEN, MAX_PATTERN_WORD,
};

use thiserror::Error;

use crate::engine::{direct_product, Budget, EngineError, FiniteSemigroup};

#[derive(Debug, Error)]
pub enum ZooError {
    #[error("{0}")]
    Parameter(String),
    #[error("refusing to build {required} elements (bound {bound})")]
    TooLarge { required: usize, bound: usize },
    #[error("closure not reached: {elements} elements within radius {radius}")]
    Unfinished { elements: usize, radius: usize },
    #[error("unknown zoo spec {0:?}")]
    UnknownSpec(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Munn(#[from] crate::munn::MunnError),
}

/// What a zoo spec string names.
#[derive(Clone, Debug)]
pub enum ZooObject {
    Finite(FiniteSemigroup),
    /// The bicyclic monoid, to be explored up to this word radius.
    Bicyclic { radius: usize },
    /// `P = (ℤ, ∘)` restricted to the window `[-window, window]`.
    PWindow { window: i64 },
}

fn num<T: std::str::FromStr>(spec: &str, field: &str) -> Result<T, ZooError> {
    field.parse().map_err(|_| ZooError::Parameter(format!("bad number {field:?} in zoo spec {spec:?}")))
}

/// Parses a zoo spec such as `b2`, `mn:3`, `prod:b2,np:2` or `bicyclic:8`.
pub fn parse_spec(spec: &str) -> Result<ZooObject, ZooError> {
    let spec = spec.trim();
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let fields: Vec<&str> = if rest.is_empty() { Vec::new() } else { rest.split(':').collect() };
    let arity = |k: usize| {
        if fields.len() == k {
            Ok(())
        } else {
            Err(ZooError::Parameter(format!("zoo spec {spec:?} expects {k} parameter(s)")))
        }
    };
    let finite = |fs: Result<FiniteSemigroup, ZooError>| fs.map(ZooObject::Finite);
    match head {
        "b2" => {
            arity(0)?;
            Ok(ZooObject::Finite(b2()))
        }
        "b2^1" => {
            arity(0)?;
            Ok(ZooObject::Finite(b2_with_identity()))
        }
        "mn" => {
            arity(1)?;
            finite(mn_table(num(spec, fields[0])?))
        }
        "np" => {
            arity(1)?;
            finite(monogenic_monoid(num(spec, fields[0])?))
        }
        "rz" => {
            arity(1)?;
            finite(right_zero(num(spec, fields[0])?))
        }
        "lz" => {
            arity(1)?;
            finite(left_zero(num(spec, fields[0])?))
        }
        "null" => {
            arity(1)?;
            finite(null_semigroup(num(spec, fields[0])?))
        }
        "sw" => {
            arity(1)?;
            finite(sw_semigroup(num(spec, fields[0])?))
        }
        "freenil" => {
            arity(3)?;
            let pattern = string_to_letters(fields[0])?;
            finite(free_nil(&pattern, num(spec, fields[1])?, num(spec, fields[2])?))
        }
        "transf" => {
            arity(3)?;
            let n: usize = num(spec, fields[0])?;
            let seed: u64 = num(spec, fields[1])?;
            let k: usize = num(spec, fields[2])?;
            if k == 0 {
                return Err(ZooError::Parameter("transf needs at least one map".into()));
            }
            finite(transformation_semigroup(n, &random_maps(n, k, seed), Budget::default()))
        }
        "bicyclic" => {
            arity(1)?;
            Ok(ZooObject::Bicyclic { radius: num(spec, fields[0])? })
        }
        "pz" => {
            arity(1)?;
            let window: i64 = num(spec, fields[0])?;
            if window < 0 {
                return Err(ZooError::Parameter("pz window must be non-negative".into()));
            }
            Ok(ZooObject::PWindow { window })
        }
        "prod" => {
            if rest.is_empty() {
                return Err(ZooError::Parameter("prod needs at least one factor".into()));
            }
            let factors = rest
                .split(',')
                .map(|f| match parse_spec(f)? {
                    ZooObject::Finite(fs) => Ok(fs),
                    _ => Err(ZooError::Parameter(format!("prod factor {f:?} is not a finite table"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ZooObject::Finite(direct_product(&factors)?))
        }
        _ => Err(ZooError::UnknownSpec(spec.to_string())),
    }
}

/// Like [`parse_spec`] but insisting on a finite table.
pub fn parse_finite_spec(spec: &str) -> Result<FiniteSemigroup, ZooError> {
    match parse_spec(spec)? {
        ZooObject::Finite(fs) => Ok(fs),
        _ => Err(ZooError::Parameter(format!("{spec:?} is not a finite table"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        assert_eq!(parse_finite_spec("b2").unwrap().len(), 5);
        assert_eq!(parse_finite_spec("b2^1").unwrap().len(), 6);
        assert_eq!(parse_finite_spec("mn:3").unwrap().len(), 14);
        assert_eq!(parse_finite_spec("prod:b2,np:2").unwrap().len(), 15);
        assert_eq!(parse_finite_spec("freenil:xx:3:2").unwrap().len(), 10);
        assert_eq!(parse_finite_spec("null:2").unwrap().len(), 2);
        assert!(matches!(parse_spec("bicyclic:8").unwrap(), ZooObject::Bicyclic { radius: 8 }));
        assert!(matches!(parse_spec("pz:15").unwrap(), ZooObject::PWindow { window: 15 }));
        assert!(parse_spec("nope").is_err());
        assert!(parse_spec("mn:x").is_err());
        assert!(parse_spec("mn").is_err());
        assert!(parse_finite_spec("pz:3").is_err());
    }
}
