//! Group spec files.

use std::path::Path;

use serde::Deserialize;

use hecke_core::group::{generate_subgroup, Family, GroupSource, GroupTable, Subgroup};
use hecke_core::{Error, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Table {
        order: usize,
        mul: Vec<Vec<usize>>,
        subgroup: SubgroupSpec,
        #[serde(rename = "N", default)]
        n: Option<SubgroupSpec>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
        subgroup: SubgroupSpec,
        #[serde(rename = "N", default)]
        n: Option<SubgroupSpec>,
    },
    Builtin {
        family: String,
        param: usize,
        subgroup: SubgroupSpec,
        #[serde(rename = "N", default)]
        n: Option<SubgroupSpec>,
    },
}

/// An element by index or by its display label.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SubgroupSpec {
    Generators(Vec<ElementRef>),
    Elements(Vec<ElementRef>),
}

pub struct LoadedSpec {
    pub description: String,
    pub group: GroupTable,
    pub subgroup: Subgroup,
    pub normal_subgroup: Option<Subgroup>,
}

impl GroupSpec {
    pub fn read(path: &Path) -> Result<GroupSpec> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        GroupSpec::parse(&text)
    }

    pub fn parse(text: &str) -> Result<GroupSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("group spec: {e}")))
    }

    fn parts(&self) -> (&SubgroupSpec, Option<&SubgroupSpec>) {
        match self {
            GroupSpec::Table { subgroup, n, .. }
            | GroupSpec::Perm { subgroup, n, .. }
            | GroupSpec::Builtin { subgroup, n, .. } => (subgroup, n.as_ref()),
        }
    }

    pub fn load(&self, max_order: usize) -> Result<LoadedSpec> {
        let (source, description) = match self {
            GroupSpec::Table { order, mul, .. } => {
                if mul.len() != *order {
                    return Err(Error::InvalidGroup(format!("order {order} but {} rows", mul.len())));
                }
                if mul.first().is_some_and(|row| row.iter().enumerate().any(|(i, &v)| i != v)) {
                    return Err(Error::InvalidGroup("element 0 must be the identity".into()));
                }
                (GroupSource::Table { mul: mul.clone() }, format!("table({order})"))
            }
            GroupSpec::Perm { degree, generators, .. } => (
                GroupSource::Permutations { degree: *degree, generators: generators.clone() },
                format!("perm(degree {degree}, {} generators)", generators.len()),
            ),
            GroupSpec::Builtin { family, param, .. } => {
                let f = Family::from_name(family, *param)?;
                (GroupSource::Builtin(f), f.to_string())
            }
        };
        let group = GroupTable::build(&source, max_order)?;
        let (h, n) = self.parts();
        let subgroup = resolve(&group, h)?;
        let normal_subgroup = n.map(|n| resolve(&group, n)).transpose()?;
        Ok(LoadedSpec { description, group, subgroup, normal_subgroup })
    }
}

fn element(g: &GroupTable, r: &ElementRef) -> Result<usize> {
    match r {
        ElementRef::Index(i) => {
            g.check_index(*i)?;
            Ok(*i)
        }
        ElementRef::Label(l) => g
            .elements()
            .find(|&x| g.label(x) == *l)
            .ok_or_else(|| Error::InvalidSubgroup(format!("no element labelled {l:?}"))),
    }
}

fn resolve(g: &GroupTable, spec: &SubgroupSpec) -> Result<Subgroup> {
    match spec {
        SubgroupSpec::Generators(gens) => {
            let idx = gens.iter().map(|r| element(g, r)).collect::<Result<Vec<_>>>()?;
            generate_subgroup(g, &idx)
        }
        SubgroupSpec::Elements(els) => {
            let idx = els.iter().map(|r| element(g, r)).collect::<Result<Vec<_>>>()?;
            Subgroup::from_elements(g, &idx)
        }
    }
}
