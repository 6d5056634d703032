use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use autoseq::automata::{parse_dfao, Dfao};
use autoseq::linrep::{deserialize_series, RationalSeries};
use autoseq::logic::SequenceBinding;

use crate::error::CliError;

pub const BUILTINS: [&str; 2] = ["T", "TT"];

/// Named sequences and representations for one invocation.
pub struct Session {
    pub env: SequenceBinding,
    pub reps: BTreeMap<String, RationalSeries>,
    force: bool,
}

pub enum Loaded {
    Sequence(Dfao),
    Series(RationalSeries),
}

pub fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

/// A representation file has a `base` line; anything else is read as a
/// DFAO.
pub fn load_file(path: &str) -> Result<Loaded, CliError> {
    let text = read(path)?;
    let is_rep = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("base"));
    let at = |e| CliError::InFile { path: path.to_string(), source: e };
    Ok(if is_rep {
        Loaded::Series(deserialize_series(&text).map_err(at)?)
    } else {
        Loaded::Sequence(parse_dfao(&text).map_err(at)?)
    })
}

impl Session {
    pub fn new(force: bool) -> Self {
        Session { env: SequenceBinding::builtin(), reps: BTreeMap::new(), force }
    }

    pub fn bind_sequence(&mut self, name: &str, dfao: Dfao) -> Result<(), CliError> {
        if !name.chars().next().is_some_and(|c| c.is_ascii_uppercase()) {
            return Err(CliError::Usage(format!("sequence names start with an uppercase letter: `{name}`")));
        }
        if BUILTINS.contains(&name) && !self.force {
            return Err(CliError::Builtin(name.to_string()));
        }
        if self.env.get(name).is_some() && !BUILTINS.contains(&name) {
            return Err(CliError::Duplicate(name.to_string()));
        }
        self.env.bind(name, dfao)?;
        Ok(())
    }

    pub fn bind_series(&mut self, name: &str, series: RationalSeries) -> Result<(), CliError> {
        if self.reps.contains_key(name) {
            return Err(CliError::Duplicate(name.to_string()));
        }
        self.reps.insert(name.to_string(), series);
        Ok(())
    }

    /// `NAME=PATH`
    pub fn load(&mut self, spec: &str) -> Result<(), CliError> {
        let (name, path) =
            spec.split_once('=').ok_or_else(|| CliError::Usage(format!("--load expects NAME=PATH, got `{spec}`")))?;
        match load_file(path)? {
            Loaded::Sequence(d) => self.bind_sequence(name, d),
            Loaded::Series(s) => self.bind_series(name, s),
        }
    }

    /// A loaded name, or else a representation file.
    pub fn series(&self, arg: &str) -> Result<RationalSeries, CliError> {
        if let Some(s) = self.reps.get(arg) {
            return Ok(s.clone());
        }
        if Path::new(arg).is_file() {
            if let Loaded::Series(s) = load_file(arg)? {
                return Ok(s);
            }
            return Err(CliError::Usage(format!("`{arg}` is not a representation file")));
        }
        Err(CliError::UnknownName(arg.to_string()))
    }
}
