//! Plain-text input formats. All files share the same lexical rules:
//! blank lines are skipped and `#` starts a comment that runs to the
//! end of the line.
//!
//! Instance file:
//! ```text
//! n 4
//! names 1 2 3 4        # optional; tokens become element names
//! edge 1 3             # a <= b, by name (or 0-based id without names)
//! ideal 1 2            # one ideal per line, empty line body = empty set
//! filter 2 3 4
//! ```
//!
//! Lattice file:
//! ```text
//! factor 8             # starts a factor with 8 elements
//! leq 0 1              # within the most recent factor
//! a 3                  # A-side antichain member: one id per factor
//! b 1
//! ```
//! `elements N` is accepted as a synonym for `factor N`.
//!
//! Transaction file: one row per line, whitespace-separated attribute
//! tokens. Implication file: lines `a -> b`. Attribute ids are
//! assigned by sorted name across both files.

use std::collections::BTreeSet;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};

use dualize_core::instance::DualInstance;
use dualize_core::lattice::{product_poset, BirkhoffMap, ExplicitLattice, ProductLattice};
use dualize_core::mining::{poset_from_unary_base, AttributePoset, ImplicationBase, TransactionDB};
use dualize_core::poset::Poset;
use dualize_core::set::ElementSet;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

pub fn parse_instance(text: &str) -> Result<DualInstance> {
    let mut n: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut ideals: Vec<Vec<String>> = Vec::new();
    let mut filters: Vec<Vec<String>> = Vec::new();
    for (lineno, line) in content_lines(text) {
        let mut tokens = line.split_whitespace();
        let key = tokens.next().unwrap();
        let rest: Vec<String> = tokens.map(str::to_string).collect();
        match key {
            "n" => {
                let v: usize = rest
                    .first()
                    .ok_or_else(|| anyhow!("line {lineno}: n needs a value"))?
                    .parse()
                    .with_context(|| format!("line {lineno}: bad element count"))?;
                n = Some(v);
            }
            "names" => names = Some(rest),
            "edge" => {
                if rest.len() != 2 {
                    bail!("line {lineno}: edge needs exactly two elements");
                }
                edges.push((rest[0].clone(), rest[1].clone()));
            }
            "ideal" => ideals.push(rest),
            "filter" => filters.push(rest),
            other => bail!("line {lineno}: unknown directive {other:?}"),
        }
    }
    let n = n.ok_or_else(|| anyhow!("missing `n` line"))?;
    let resolve = |token: &str| -> Result<usize> {
        if let Some(names) = &names {
            names
                .iter()
                .position(|x| x == token)
                .ok_or_else(|| anyhow!("unknown element name {token:?}"))
        } else {
            let id: usize = token
                .parse()
                .with_context(|| format!("bad element id {token:?}"))?;
            if id >= n {
                bail!("element id {id} out of range 0..{n}");
            }
            Ok(id)
        }
    };
    let edge_ids: Vec<(usize, usize)> = edges
        .iter()
        .map(|(a, b)| Ok((resolve(a)?, resolve(b)?)))
        .collect::<Result<_>>()?;
    let mut poset = Poset::from_edges(n, &edge_ids)?;
    if let Some(names) = names.clone() {
        if names.len() != n {
            bail!("names line lists {} elements, expected {n}", names.len());
        }
        poset = poset.with_names(names)?;
    }
    let to_set = |members: &[Vec<String>]| -> Result<Vec<ElementSet>> {
        members
            .iter()
            .map(|tokens| {
                let ids: Vec<usize> =
                    tokens.iter().map(|t| resolve(t)).collect::<Result<_>>()?;
                Ok(ElementSet::from_ids(n, ids))
            })
            .collect()
    };
    Ok(DualInstance::validate(
        Arc::new(poset),
        to_set(&ideals)?,
        to_set(&filters)?,
    )?)
}

pub struct LatticeInput {
    pub map: BirkhoffMap,
    pub a_family: Vec<Vec<usize>>,
    pub b_family: Vec<Vec<usize>>,
}

pub fn parse_lattice(text: &str) -> Result<LatticeInput> {
    let mut factor_sizes: Vec<usize> = Vec::new();
    let mut factor_pairs: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut a_raw: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut b_raw: Vec<(usize, Vec<usize>)> = Vec::new();
    for (lineno, line) in content_lines(text) {
        let mut tokens = line.split_whitespace();
        let key = tokens.next().unwrap();
        let rest: Vec<usize> = tokens
            .map(|t| {
                t.parse::<usize>()
                    .with_context(|| format!("line {lineno}: bad id {t:?}"))
            })
            .collect::<Result<_>>()?;
        match key {
            "factor" | "elements" => {
                let size = *rest
                    .first()
                    .ok_or_else(|| anyhow!("line {lineno}: {key} needs a size"))?;
                factor_sizes.push(size);
                factor_pairs.push(Vec::new());
            }
            "leq" => {
                if rest.len() != 2 {
                    bail!("line {lineno}: leq needs exactly two ids");
                }
                let pairs = factor_pairs
                    .last_mut()
                    .ok_or_else(|| anyhow!("line {lineno}: leq before any factor"))?;
                pairs.push((rest[0], rest[1]));
            }
            "a" => a_raw.push((lineno, rest)),
            "b" => b_raw.push((lineno, rest)),
            other => bail!("line {lineno}: unknown directive {other:?}"),
        }
    }
    if factor_sizes.is_empty() {
        bail!("no factor declared");
    }
    let factors: Vec<ExplicitLattice> = factor_sizes
        .iter()
        .zip(&factor_pairs)
        .map(|(&size, pairs)| Ok(ExplicitLattice::from_leq_pairs(size, pairs)?))
        .collect::<Result<_>>()?;
    let arity = factors.len();
    let check_tuples = |raw: Vec<(usize, Vec<usize>)>| -> Result<Vec<Vec<usize>>> {
        raw.into_iter()
            .map(|(lineno, tuple)| {
                if tuple.len() != arity {
                    bail!(
                        "line {lineno}: antichain member has {} ids, expected one per factor ({arity})",
                        tuple.len()
                    );
                }
                Ok(tuple)
            })
            .collect()
    };
    let a_family = check_tuples(a_raw)?;
    let b_family = check_tuples(b_raw)?;
    let map = product_poset(ProductLattice::new(factors)?)?;
    Ok(LatticeInput {
        map,
        a_family,
        b_family,
    })
}

pub struct MiningInput {
    pub attributes: Vec<String>,
    pub db: TransactionDB,
    pub attribute_poset: AttributePoset,
}

pub fn parse_mining(transactions: &str, implications: &str) -> Result<MiningInput> {
    let mut rows_raw: Vec<Vec<String>> = Vec::new();
    for (_, line) in content_lines(transactions) {
        rows_raw.push(line.split_whitespace().map(str::to_string).collect());
    }
    let mut rules_raw: Vec<(Vec<String>, String)> = Vec::new();
    for (lineno, line) in content_lines(implications) {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| anyhow!("line {lineno}: expected `a -> b`"))?;
        let premise: Vec<String> = lhs.split_whitespace().map(str::to_string).collect();
        let conclusion = rhs.trim();
        if conclusion.split_whitespace().count() != 1 {
            bail!("line {lineno}: the conclusion must be a single attribute");
        }
        rules_raw.push((premise, conclusion.to_string()));
    }
    let mut universe: BTreeSet<String> = BTreeSet::new();
    for row in &rows_raw {
        universe.extend(row.iter().cloned());
    }
    for (premise, conclusion) in &rules_raw {
        universe.extend(premise.iter().cloned());
        universe.insert(conclusion.clone());
    }
    let attributes: Vec<String> = universe.into_iter().collect();
    let id_of = |name: &str| -> usize {
        attributes
            .binary_search_by(|x| x.as_str().cmp(name))
            .expect("token was inserted above")
    };
    let n = attributes.len();
    let rows: Vec<ElementSet> = rows_raw
        .iter()
        .map(|row| ElementSet::from_ids(n, row.iter().map(|t| id_of(t))))
        .collect();
    let db = TransactionDB::new(n, rows);
    let mut base = ImplicationBase::new(n).with_names(attributes.clone());
    for (premise, conclusion) in &rules_raw {
        let ids: Vec<usize> = premise.iter().map(|t| id_of(t)).collect();
        base.add_rule(&ids, id_of(conclusion))?;
    }
    let attribute_poset = poset_from_unary_base(&base)?;
    Ok(MiningInput {
        attributes,
        db,
        attribute_poset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_with_names_and_comments() {
        let text = "\
# worked example
n 4
names 1 2 3 4
edge 1 3
edge 2 3
edge 2 4
ideal 1 2
ideal 2 4
filter 2 3 4
";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.ideals.len(), 2);
        assert_eq!(inst.filters.len(), 1);
        assert_eq!(inst.ideals[0].to_vec(), vec![0, 1]);
    }

    #[test]
    fn instance_numeric_ids_and_errors() {
        let inst = parse_instance("n 3\nedge 0 1\nideal 0\nfilter 0 1\n").unwrap();
        assert_eq!(inst.ideals[0].to_vec(), vec![0]);
        assert!(parse_instance("edge 0 1\n").is_err(), "missing n");
        assert!(parse_instance("n 2\nideal 5\n").is_err(), "range");
        assert!(parse_instance("n 2\nfoo 1\n").is_err(), "directive");
        // {1} is not an ideal of 0 <= 1.
        assert!(parse_instance("n 2\nedge 0 1\nideal 1\n").is_err());
    }

    #[test]
    fn lattice_single_factor() {
        let text = "\
elements 3
leq 0 1
leq 1 2
a 2
b 0
";
        let input = parse_lattice(text).unwrap();
        assert_eq!(input.map.num_irreducibles(), 2);
        assert_eq!(input.a_family, vec![vec![2]]);
    }

    #[test]
    fn lattice_product_tuples() {
        let text = "\
factor 2
leq 0 1
factor 2
leq 0 1
a 1 0
b 0 1
";
        let input = parse_lattice(text).unwrap();
        assert_eq!(input.map.num_irreducibles(), 2);
        assert_eq!(input.b_family, vec![vec![0, 1]]);
        assert!(parse_lattice("factor 2\na 0 0\n").is_err(), "arity");
    }

    #[test]
    fn mining_files() {
        let transactions = "\
Bread Butter
Bread Butter
Bread Milk
Bread Cheese Milk
Bread
";
        let implications = "\
Butter -> Bread
Cheese -> Bread
Cheese -> Milk
";
        let input = parse_mining(transactions, implications).unwrap();
        assert_eq!(
            input.attributes,
            vec!["Bread", "Butter", "Cheese", "Milk"]
        );
        assert_eq!(input.db.rows.len(), 5);
        assert!(input.attribute_poset.poset.leq(0, 1));
    }

    #[test]
    fn multi_premise_rule_rejected() {
        let err = match parse_mining("a b c\n", "a b -> c\n") {
            Err(err) => err,
            Ok(_) => panic!("multi-premise rule should be rejected"),
        };
        assert!(format!("{err:#}").contains("unary"), "{err:#}");
    }
}
