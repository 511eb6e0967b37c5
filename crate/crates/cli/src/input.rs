use std::io::{Read, Write};
use std::path::Path;

use anyhow::{Context, Result};
use sbbd_core::io::{read_design, read_symbol_csv};
use sbbd_core::{catalog_by_id, construct_od1, verify_od, BlockDesign, BlockDesignFile, DesignMatrix, OrderedDesign};

use crate::Dimensions;

/// Reads a path, or standard input for `-`.
pub fn read_text(source: &str) -> Result<String> {
    if source == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(source).with_context(|| format!("reading {source}"))
    }
}

pub fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn load_design_matrix(source: &str, dims: &Dimensions) -> Result<DesignMatrix> {
    let text = read_text(source)?;
    Ok(read_design(&text, dims.v1, dims.v2)?)
}

/// `catalog:<id>`, a block-design JSON file, or a bare catalog id.
pub fn load_block_design(spec: &str) -> Result<BlockDesign> {
    if let Some(id) = spec.strip_prefix("catalog:") {
        return Ok(catalog_by_id(id)?);
    }
    if spec != "-" && !Path::new(spec).exists() {
        if let Ok(d) = catalog_by_id(spec) {
            return Ok(d);
        }
    }
    let file: BlockDesignFile = serde_json::from_str(&read_text(spec)?)
        .map_err(|e| sbbd_core::Error::Format(format!("block-design JSON: {e}")))?;
    Ok(file.verify()?)
}

/// A prime power `q` builds OD₁(q, q); anything else is read as symbol CSV
/// over `n` symbols.
pub fn load_ordered_design(spec: &str, n: usize) -> Result<OrderedDesign> {
    if let Ok(q) = spec.parse::<usize>() {
        return Ok(construct_od1(q)?);
    }
    let rows = read_symbol_csv(&read_text(spec)?)?;
    let s = rows.first().map_or(0, Vec::len);
    Ok(verify_od(&rows, n, s)?)
}

/// `cyclic:<u>` or `;`-separated comma lists of 1-based images.
pub fn parse_perms(spec: &str, v2: usize) -> Result<Vec<Vec<usize>>> {
    if let Some(u) = spec.strip_prefix("cyclic:") {
        let u: usize = u
            .parse()
            .map_err(|_| sbbd_core::Error::Format(format!("bad layer count {u:?}")))?;
        if u == 0 {
            return Err(sbbd_core::Error::Format("layer count must be positive".into()).into());
        }
        return Ok(sbbd_core::cyclic_shifts(v2, u));
    }
    spec.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| sbbd_core::Error::Format(format!("bad permutation entry {x:?}")).into())
                })
                .collect()
        })
        .collect()
}
