//! Objects read from `--input` or stdin, one per line.

use std::io::{self, BufRead};

use parkfn::pf::parse_prefs;
use parkfn::{ColoredTree, ParkingFunction, Params, RootedForest};
use serde_json::Value;

use crate::args::Opts;
use crate::error::CliError;

#[derive(Debug)]
pub enum Item {
    /// `paren` records the input form so output can mirror it.
    Pf { pf: ParkingFunction, paren: bool },
    Forest(RootedForest),
    Colored(ColoredTree),
}

impl Item {
    pub fn describe(&self) -> &'static str {
        match self {
            Item::Pf { .. } => "a parking function",
            Item::Forest(_) => "a forest",
            Item::Colored(_) => "a colored tree",
        }
    }
}

/// `None` for blank lines and `{"meta": ...}` headers.
pub fn parse_item(line: &str, opts: &Opts) -> Result<Option<Item>, CliError> {
    let line = line.trim();
    if line.is_empty() {
        return Ok(None);
    }
    if !line.starts_with('{') {
        let prefs = parse_prefs(line)?;
        let m = prefs.len() as u32;
        let params = match opts.ab()? {
            Some((a, b)) => Params::ab(a, b, m)?,
            None => Params::classical(m, opts.n.unwrap_or(m))?,
        };
        let pf = ParkingFunction::new(params, prefs)?;
        return Ok(Some(Item::Pf { pf, paren: true }));
    }
    let value: Value = serde_json::from_str(line)?;
    let Some(obj) = value.as_object() else {
        return Err(CliError::Usage("expected a JSON object".into()));
    };
    if obj.contains_key("meta") {
        Ok(None)
    } else if obj.contains_key("kind") {
        let pf = serde_json::from_value(value)?;
        Ok(Some(Item::Pf { pf, paren: false }))
    } else if obj.contains_key("color") {
        Ok(Some(Item::Colored(serde_json::from_value(value)?)))
    } else if obj.contains_key("parent") {
        Ok(Some(Item::Forest(serde_json::from_value(value)?)))
    } else {
        Err(CliError::Usage("unrecognized JSON object".into()))
    }
}

/// Feeds every item to `f`, from `--input` if given and stdin otherwise.
pub fn for_each_item(
    opts: &Opts,
    mut f: impl FnMut(Item) -> Result<(), CliError>,
) -> Result<(), CliError> {
    if let Some(s) = &opts.input {
        if let Some(item) = parse_item(s, opts)? {
            f(item)?;
        }
        return Ok(());
    }
    for line in io::stdin().lock().lines() {
        if let Some(item) = parse_item(&line?, opts)? {
            f(item)?;
        }
    }
    Ok(())
}
