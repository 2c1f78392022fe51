//! JSON operad descriptions.
//!
//! ```json
//! {"name": "Com",
//!  "generators": [{"name": "c", "symmetry": "sym"}],
//!  "relations": ["(x1 {c} x2) {c} x3 - x1 {c} (x2 {c} x3)"]}
//! ```
//!
//! `symmetry` is `"sym"`, `"antisym"`, `{"pair": other}` or
//! `{"swap": {name: rational}}` giving `(12)` of the generator explicitly.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free3::GeneratorSpace;
use crate::linalg::{parse_rational, MatrixQ, Rational};
use crate::operad::{make_operad, QuadOperad};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperadSpec {
    pub name: String,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub symmetry: Symmetry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Symmetry {
    Named(String),
    Pair { pair: String },
    Swap { swap: BTreeMap<String, String> },
}

impl OperadSpec {
    pub fn generator_space(&self) -> Result<GeneratorSpace> {
        let names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let d = names.len();
        let index = |n: &str| {
            names.iter().position(|x| x == n).ok_or_else(|| Error::UnknownGenerator(n.to_string()))
        };
        let mut swap = MatrixQ::zeros(d, d);
        for (j, g) in self.generators.iter().enumerate() {
            match &g.symmetry {
                Symmetry::Named(s) if s == "sym" => swap[(j, j)] = Rational::one(),
                Symmetry::Named(s) if s == "antisym" => swap[(j, j)] = -Rational::one(),
                Symmetry::Named(s) => {
                    return Err(Error::SpecFile(format!("unknown symmetry `{s}` for generator `{}`", g.name)))
                }
                Symmetry::Pair { pair } => swap[(index(pair)?, j)] = Rational::one(),
                Symmetry::Swap { swap: coeffs } => {
                    for (name, c) in coeffs {
                        swap[(index(name)?, j)] = parse_rational(c)?;
                    }
                }
            }
        }
        GeneratorSpace::new(names, swap)
    }

    pub fn build(&self) -> Result<QuadOperad> {
        let gens = self.generator_space()?;
        let texts: Vec<&str> = self.relations.iter().map(String::as_str).collect();
        make_operad(&self.name, gens, &texts)
    }
}

pub fn parse_spec(json: &str) -> Result<OperadSpec> {
    serde_json::from_str(json).map_err(|e| Error::SpecFile(e.to_string()))
}

pub fn load_spec_file(path: &Path) -> Result<QuadOperad> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::SpecFile(format!("{}: {e}", path.display())))?;
    parse_spec(&text)?.build()
}
