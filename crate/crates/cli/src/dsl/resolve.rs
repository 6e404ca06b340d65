use std::collections::{BTreeMap, BTreeSet};

use super::{Block, BlockKind, DslError, Manifest};

fn declared(block: &Block, key: &str) -> BTreeSet<String> {
    block.entries.iter().filter(|e| e.key.name == key).filter_map(|e| e.key.argument.clone()).collect()
}

/// Names an entry of `block` may mention, given the algebra it refers to.
fn scope(block: &Block, algebra: Option<&Block>) -> Option<BTreeSet<String>> {
    let gens = algebra.map(|a| declared(a, "deg")).unwrap_or_default();
    match block.kind {
        BlockKind::Algebra => Some(declared(block, "deg")),
        BlockKind::Complex => Some(declared(block, "cell")),
        BlockKind::Ideal => Some(gens),
        BlockKind::Poisson => Some(gens.iter().flat_map(|g| [g.clone(), format!("@{g}")]).collect()),
        BlockKind::Form => Some(gens.iter().flat_map(|g| [g.clone(), format!("d{g}")]).collect()),
        BlockKind::Lie => Some(BTreeSet::new()),
        BlockKind::Options => None,
    }
}

pub fn resolve(m: &Manifest) -> Result<(), DslError> {
    let mut names: BTreeMap<&str, &Block> = BTreeMap::new();
    for b in &m.blocks {
        if names.insert(&b.name, b).is_some() {
            return Err(DslError::DuplicateName { name: b.name.clone(), span: b.span });
        }
        let mut keys = BTreeSet::new();
        for e in &b.entries {
            if !keys.insert(&e.key) {
                return Err(DslError::DuplicateName { name: e.key.to_string(), span: e.span });
            }
        }
    }
    for b in &m.blocks {
        let mut algebra = None;
        if let Some(on) = b.get_plain("on") {
            let target = on.value.as_name().and_then(|n| names.get(n)).filter(|t| t.kind == BlockKind::Algebra);
            match target {
                Some(t) => algebra = Some(*t),
                None => {
                    let mut shown = Vec::new();
                    on.value.names(&mut shown);
                    let name = shown.into_iter().next().unwrap_or_else(|| "on".into());
                    return Err(DslError::UnresolvedReference { name, span: on.span });
                }
            }
        }
        let Some(visible) = scope(b, algebra) else { continue };
        let own_arguments = matches!(b.kind, BlockKind::Algebra | BlockKind::Complex);
        for e in &b.entries {
            if e.key.name == "on" && e.key.argument.is_none() {
                continue;
            }
            if own_arguments {
                if let Some(arg) = &e.key.argument {
                    if !visible.contains(arg) {
                        return Err(DslError::UnresolvedReference { name: arg.clone(), span: e.span });
                    }
                }
            }
            let mut used = Vec::new();
            e.value.names(&mut used);
            if let Some(n) = used.into_iter().find(|n| !visible.contains(n)) {
                return Err(DslError::UnresolvedReference { name: n, span: e.span });
            }
        }
    }
    Ok(())
}
