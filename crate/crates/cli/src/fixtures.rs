//! The bundled corpus of example presentations.

use std::fs;
use std::io;
use std::path::Path;

pub const EXTENSION: &str = "pres";

pub struct Fixture {
    pub name: String,
    pub text: String,
}

fn fixture(name: impl Into<String>, comment: &str, gens: &[String], rels: &[String]) -> Fixture {
    let mut text = format!("# {comment}\ngens:");
    for g in gens {
        text.push(' ');
        text.push_str(g);
    }
    text.push_str("\nrels:");
    for (k, r) in rels.iter().enumerate() {
        text.push_str(if k == 0 { " " } else { " | " });
        text.push_str(r);
    }
    text.push('\n');
    Fixture {
        name: name.into(),
        text,
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn strs(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn surface(g: usize) -> Fixture {
    let gens: Vec<String> = (1..=g)
        .flat_map(|i| [format!("a{i}"), format!("b{i}")])
        .collect();
    let rel: String = (1..=g).map(|i| format!("(a{i},b{i})")).collect();
    fixture(
        format!("surface_g{g}"),
        &format!("closed orientable surface of genus {g}"),
        &gens,
        &[rel],
    )
}

fn chain_link(m: usize) -> Fixture {
    let rels: Vec<String> = (1..=m).map(|i| format!("(x{i},x{})", i % m + 1)).collect();
    fixture(
        format!("chain_link_{m}"),
        &format!("circular chain of {m} linked circles"),
        &names("x", m),
        &rels,
    )
}

/// All fixtures, sorted by name.
pub fn corpus() -> Vec<Fixture> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(fixture(
            format!("free_{n}"),
            &format!("free group of rank {n}"),
            &names("x", n),
            &[],
        ));
    }
    out.push(fixture(
        "gamma3_relator",
        "single relator in the third lower central subgroup",
        &strs(&["x", "y"]),
        &strs(&["((x,y),y)"]),
    ));
    out.push(fixture(
        "independent_pair",
        "two relators with independent exponent sums",
        &strs(&["x", "y", "z", "t"]),
        &strs(&["x^3 y^-4 z^2 y", "y^2 z^2"]),
    ));
    out.push(fixture(
        "independent_triple",
        "three relators with independent exponent sums",
        &names("x", 5),
        &strs(&["x1 x2^2 x1", "x2 x3^2 x2", "x5 x4^2 x5"]),
    ));
    for g in 1..=3 {
        out.push(surface(g));
    }
    out.push(fixture(
        "two_commutators",
        "two commutator relators, not a surface algebra",
        &names("x", 4),
        &strs(&["(x1 x2,x3^2)", "(x1 x3 x1,x4^3)"]),
    ));
    for m in [4, 6, 8] {
        out.push(chain_link(m));
    }
    out.push(fixture(
        "path_link_mixed",
        "path of four commutators plus one relator outside the commutator subgroup",
        &names("x", 5),
        &strs(&[
            "x1^2 x2^-2 x4^2",
            "(x1,x2)",
            "(x2,x3)",
            "(x3,x4)",
            "(x4,x5)",
        ]),
    ));
    out.push(fixture(
        "cyclic_5",
        "cyclic group of order 5",
        &strs(&["x"]),
        &strs(&["x^5"]),
    ));
    let ab_rels: Vec<String> = kahler_core::linalg::pairs(4)
        .map(|(i, j)| format!("(x{},x{})", i + 1, j + 1))
        .collect();
    out.push(fixture(
        "free_abelian_4",
        "free abelian group of rank 4",
        &names("x", 4),
        &ab_rels,
    ));
    out.push(fixture("trivial", "trivial group", &[], &[]));
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// Writes every fixture as `<name>.pres` into `dir`, creating it if needed.
pub fn write_corpus(dir: &Path) -> io::Result<Vec<String>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for f in corpus() {
        let file = format!("{}.{EXTENSION}", f.name);
        fs::write(dir.join(&file), f.text.as_bytes())?;
        written.push(file);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        let c = corpus();
        assert_eq!(c.len(), 19);
        for f in c {
            kahler_core::parse_presentation(&f.text).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        }
    }

    #[test]
    fn surface_text() {
        assert_eq!(
            surface(2).text,
            "# closed orientable surface of genus 2\ngens: a1 b1 a2 b2\nrels: (a1,b1)(a2,b2)\n"
        );
    }
}
