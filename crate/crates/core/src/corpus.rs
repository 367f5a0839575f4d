//! The builtin corpus: every builtin group up to an order bound together
//! with all of its subgroups.

use crate::error::Result;
use crate::group::{all_subgroups, Family, GroupTable, Subgroup};

/// Builtin groups of order at most `max_order`, in a fixed order. Small
/// parameters that only repeat a cyclic group are left out.
pub fn corpus_families(max_order: usize) -> Vec<Family> {
    let mut out = Vec::new();
    out.extend((1..=max_order).map(Family::Cyclic));
    out.extend((2..=max_order / 2).map(Family::Dihedral));
    out.extend((3..=4).map(Family::Symmetric));
    out.push(Family::Quaternion(8));
    out.extend((3..=max_order).map(Family::AffineMod));
    out.retain(|f| f.order() <= max_order);
    out
}

#[derive(Debug, Clone)]
pub struct CorpusGroup {
    pub family: Family,
    pub group: GroupTable,
    pub subgroups: Vec<Subgroup>,
}

pub fn corpus_groups(max_order: usize) -> Result<Vec<CorpusGroup>> {
    corpus_families(max_order)
        .into_iter()
        .map(|family| {
            let group = GroupTable::builtin(family, max_order)?;
            let subgroups = all_subgroups(&group);
            Ok(CorpusGroup { family, group, subgroups })
        })
        .collect()
}

pub fn count_pairs(groups: &[CorpusGroup]) -> usize {
    groups.iter().map(|c| c.subgroups.len()).sum()
}
