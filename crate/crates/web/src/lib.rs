//! Browser bindings. Each export takes plain strings and returns text for the page, so the same
//! functions run natively in the unit tests below.

use fock::canonical::canonical_basis_for_content;
use fock::canonical::SearchOptions;
use fock::crystal::{eps, i_string, phi, sigma_i};
use fock::indexation::{parse_charges, to_l_indexation, to_n_indexation, ChargedPartition};
use fock::partitions::{Multipartition, Partition};
use wasm_bindgen::prelude::*;

// keeps a click from freezing the tab
const MAX_BOXES: usize = 8;

fn charges(s: &str) -> Result<Vec<i64>, String> {
    parse_charges(s).ok_or_else(|| format!("bad charge vector '{s}'"))
}

fn level(x: u32, what: &str) -> Result<usize, String> {
    if x == 0 {
        Err(format!("{what} must be positive"))
    } else {
        Ok(x as usize)
    }
}

pub fn convert_text(partition: &str, charge: i64, n: u32, l: u32) -> Result<String, String> {
    let (n, l) = (level(n, "n")?, level(l, "l")?);
    let lam: Partition = partition.parse().map_err(|e| format!("bad partition: {e}"))?;
    let cp = ChargedPartition::new(lam, charge);
    let ls = to_l_indexation(&cp, n, l);
    let ns = to_n_indexation(&cp, n, l);
    Ok(format!("level-one label: {cp}\nl-side: {ls}\nn-side: {ns}"))
}

pub fn canonical_text(charges_s: &str, content_s: &str, n: u32, plus: bool) -> Result<String, String> {
    let n = level(n, "n")?;
    let ch = charges(charges_s)?;
    let content: Vec<usize> = content_s
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("bad content '{content_s}'")))
        .collect::<Result<_, _>>()?;
    if content.len() != n {
        return Err(format!("content needs {n} entries"));
    }
    let boxes: usize = content.iter().sum();
    if boxes > MAX_BOXES {
        return Err(format!("{boxes} boxes is too large for the page (limit {MAX_BOXES}); use the command line"));
    }
    let t = canonical_basis_for_content(&ch, &content, n, ch.len(), if plus { 1 } else { -1 }, &SearchOptions::default())
        .map_err(|e| e.to_string())?;
    Ok(t.render())
}

pub fn crystal_text(label: &str, charges_s: &str, n: u32, i: u32) -> Result<String, String> {
    let n = level(n, "n")?;
    let ch = charges(charges_s)?;
    let mp: Multipartition = label.parse().map_err(|e| format!("bad multipartition: {e}"))?;
    if mp.len() != ch.len() {
        return Err(format!("{} components but {} charges", mp.len(), ch.len()));
    }
    let i = i as usize;
    if i >= n {
        return Err(format!("residue {i} is not below n = {n}"));
    }
    let s = sigma_i(&mp, &ch, n, i);
    let string: Vec<String> = i_string(&mp, &ch, n, i).iter().map(|x| x.to_string()).collect();
    Ok(format!(
        "σ_{i}: {s}\nφ = {}, ε = {}\n{i}-string: {}",
        phi(&mp, &ch, n, i),
        eps(&mp, &ch, n, i),
        string.join(" → ")
    ))
}

#[wasm_bindgen]
pub fn convert(partition: &str, charge: i64, n: u32, l: u32) -> Result<String, String> {
    convert_text(partition, charge, n, l)
}

#[wasm_bindgen]
pub fn canonical(charges: &str, content: &str, n: u32, plus: bool) -> Result<String, String> {
    canonical_text(charges, content, n, plus)
}

#[wasm_bindgen]
pub fn crystal(label: &str, charges: &str, n: u32, i: u32) -> Result<String, String> {
    crystal_text(label, charges, n, i)
}
