//! Bundled designs, resolutions and figure arrays, and ingestion of design catalogs.
//!
//! Data lives under `data/` in the crate and is compiled in:
//!
//! - `data/fixtures/*.ta`, `*.uta`: explicit arrays, 1-based symbols.
//! - `data/designs/*.txt`: one or more designs in the design text format, 0-based.
//! - `data/resolutions/*.txt`: resolutions in the resolution text format, 0-based.

use std::collections::HashMap;
use std::path::Path;

use crate::arrays::{TripleArray, Uta};
use crate::canon::{canonical_design, CanonKey};
use crate::constructions::quadratic_residue_design;
use crate::design::{BlockDesign, Resolution};
use crate::error::{Error, Result};
use crate::geometry::pg_design;
use crate::text::Lines;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureKind {
    Design,
    Designs,
    Resolution,
    Uta,
    Ta,
}

/// Properties a fixture is expected to have once loaded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expected {
    /// `(r, c, v)` for arrays, `(v, k, lambda)` for designs.
    pub params: Option<(usize, usize, usize)>,
    pub resolvable: Option<bool>,
    pub quad: Option<bool>,
    /// Number of designs in a multi-design file.
    pub count: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: &'static str,
    pub kind: FixtureKind,
    pub expected: Expected,
    text: &'static str,
    one_based: bool,
}

#[derive(Debug, Clone)]
pub enum FixtureObject {
    Design(BlockDesign),
    Designs(Vec<BlockDesign>),
    Resolution(Resolution),
    Uta(Uta),
    Ta(TripleArray),
}

impl FixtureObject {
    pub fn into_ta(self) -> Option<TripleArray> {
        match self {
            FixtureObject::Ta(t) => Some(t),
            _ => None,
        }
    }

    pub fn into_uta(self) -> Option<Uta> {
        match self {
            FixtureObject::Uta(u) => Some(u),
            FixtureObject::Ta(t) => t.uta().ok(),
            _ => None,
        }
    }

    pub fn into_designs(self) -> Option<Vec<BlockDesign>> {
        match self {
            FixtureObject::Design(d) => Some(vec![d]),
            FixtureObject::Designs(d) => Some(d),
            _ => None,
        }
    }

    pub fn into_resolution(self) -> Option<Resolution> {
        match self {
            FixtureObject::Resolution(r) => Some(r),
            _ => None,
        }
    }
}

macro_rules! data {
    ($path:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/data/", $path))
    };
}

fn array(id: &'static str, kind: FixtureKind, text: &'static str, params: (usize, usize, usize)) -> Fixture {
    Fixture {
        id,
        kind,
        expected: Expected {
            params: Some(params),
            ..Expected::default()
        },
        text,
        one_based: true,
    }
}

fn with(mut f: Fixture, resolvable: Option<bool>, quad: Option<bool>) -> Fixture {
    f.expected.resolvable = resolvable;
    f.expected.quad = quad;
    f
}

fn data_file(
    id: &'static str,
    kind: FixtureKind,
    text: &'static str,
    params: (usize, usize, usize),
    count: Option<usize>,
) -> Fixture {
    Fixture {
        id,
        kind,
        expected: Expected {
            params: Some(params),
            count,
            ..Expected::default()
        },
        text,
        one_based: false,
    }
}

/// Labels of the seven bundled Kirkman parades, in catalog order.
pub const PARADE_LABELS: [&str; 7] = ["1a", "1b", "7a", "7b", "19a", "19b", "61"];

fn parade_text(label: &str) -> &'static str {
    match label {
        "1a" => data!("resolutions/kts15-1a.txt"),
        "1b" => data!("resolutions/kts15-1b.txt"),
        "7a" => data!("resolutions/kts15-7a.txt"),
        "7b" => data!("resolutions/kts15-7b.txt"),
        "19a" => data!("resolutions/kts15-19a.txt"),
        "19b" => data!("resolutions/kts15-19b.txt"),
        "61" => data!("resolutions/kts15-61.txt"),
        _ => unreachable!(),
    }
}

pub fn fixtures() -> Vec<Fixture> {
    use FixtureKind::*;
    let mut v = vec![
        with(
            array("fig1-ta-4x9", Ta, data!("fixtures/fig1-4x9.ta"), (4, 9, 12)),
            Some(true),
            None,
        ),
        array("fig2-uta-3x4", Uta, data!("fixtures/fig2-3x4.uta"), (3, 4, 6)),
        array("fig3-ta-7x15", Ta, data!("fixtures/fig3-7x15.ta"), (7, 15, 35)),
        with(
            array("fig6-top-ta-7x8", Ta, data!("fixtures/fig6-top-7x8.ta"), (7, 8, 14)),
            Some(true),
            None,
        ),
        with(
            array(
                "fig6-bottom-ta-7x8",
                Ta,
                data!("fixtures/fig6-bottom-7x8.ta"),
                (7, 8, 14),
            ),
            Some(false),
            Some(false),
        ),
        array("fig8-left-ta-5x6", Ta, data!("fixtures/fig8-left-5x6.ta"), (5, 6, 10)),
        array("fig8-right-ta-5x6", Ta, data!("fixtures/fig8-right-5x6.ta"), (5, 6, 10)),
        with(
            array(
                "figB1-top-ta-7x15",
                Ta,
                data!("fixtures/figB1-top-7x15.ta"),
                (7, 15, 35),
            ),
            Some(true),
            None,
        ),
        with(
            array(
                "figB1-middle-ta-7x15",
                Ta,
                data!("fixtures/figB1-middle-7x15.ta"),
                (7, 15, 35),
            ),
            Some(true),
            None,
        ),
        with(
            array(
                "figB1-bottom-ta-7x15",
                Ta,
                data!("fixtures/figB1-bottom-7x15.ta"),
                (7, 15, 35),
            ),
            Some(true),
            None,
        ),
        with(
            array("figC1-ta-21x15", Ta, data!("fixtures/figC1-21x15.ta"), (21, 15, 63)),
            Some(true),
            None,
        ),
        data_file("design-fano", Design, data!("designs/fano.txt"), (7, 3, 1), None),
        data_file(
            "designs-15-7-3",
            Designs,
            data!("designs/sym-15-7-3.txt"),
            (15, 7, 3),
            Some(5),
        ),
        data_file(
            "designs-16-6-2",
            Designs,
            data!("designs/sym-16-6-2.txt"),
            (16, 6, 2),
            Some(3),
        ),
        data_file(
            "design-21-5-1-for-res-15-5-6",
            Design,
            data!("designs/sym-21-5-1-for-res-15-5-6.txt"),
            (21, 5, 1),
            None,
        ),
        data_file(
            "resolution-15-5-6",
            Resolution,
            data!("resolutions/res-15-5-6.txt"),
            (15, 5, 6),
            None,
        ),
        data_file(
            "packing-pg3-3",
            Resolution,
            data!("resolutions/pg3-3-packing.txt"),
            (40, 4, 1),
            None,
        ),
    ];
    let ids = [
        "parade-1a",
        "parade-1b",
        "parade-7a",
        "parade-7b",
        "parade-19a",
        "parade-19b",
        "parade-61",
    ];
    for (id, label) in ids.into_iter().zip(PARADE_LABELS) {
        v.push(data_file(id, Resolution, parade_text(label), (15, 3, 1), None));
    }
    v
}

pub fn list_fixtures() -> Vec<&'static str> {
    fixtures().into_iter().map(|f| f.id).collect()
}

fn check_design(d: &BlockDesign, expected: Option<(usize, usize, usize)>) -> Result<()> {
    let p = d.verify_2design()?;
    if let Some(e) = expected {
        if (p.v, p.k, p.lambda) != e {
            return Err(Error::Params(format!("expected 2-{e:?}, found {p}")));
        }
    }
    Ok(())
}

fn check_array_verdicts(u: &Uta, ex: &Expected) -> Result<()> {
    if let Some(want) = ex.resolvable {
        if u.is_resolvable() != want {
            return Err(Error::Consistency(format!("resolvable should be {want}")));
        }
    }
    if let Some(want) = ex.quad {
        if u.is_quad() != want {
            return Err(Error::Consistency(format!("quad should be {want}")));
        }
    }
    Ok(())
}

fn check_array_params(r: usize, c: usize, v: usize, ex: &Expected) -> Result<()> {
    match ex.params {
        Some(p) if p != (r, c, v) => Err(Error::Params(format!("expected {p:?}, found ({r}, {c}, {v})"))),
        _ => Ok(()),
    }
}

impl Fixture {
    pub fn text(&self) -> &'static str {
        self.text
    }

    /// Parses the fixture and checks it against its verifier and expected properties.
    pub fn load(&self) -> Result<FixtureObject> {
        let ex = &self.expected;
        let obj = match self.kind {
            FixtureKind::Ta => {
                let t = if self.one_based {
                    TripleArray::from_text_one_based(self.text)?
                } else {
                    TripleArray::from_text(self.text)?
                };
                t.verify()?;
                check_array_params(t.r(), t.c(), t.v(), ex)?;
                check_array_verdicts(&t.uta()?, ex)?;
                FixtureObject::Ta(t)
            }
            FixtureKind::Uta => {
                let u = if self.one_based {
                    Uta::from_text_one_based(self.text)?
                } else {
                    Uta::from_text(self.text)?
                };
                u.verify()?;
                check_array_params(u.r(), u.c(), u.v(), ex)?;
                check_array_verdicts(&u, ex)?;
                FixtureObject::Uta(u)
            }
            FixtureKind::Design => {
                let d = BlockDesign::from_text(self.text)?;
                check_design(&d, ex.params)?;
                FixtureObject::Design(d)
            }
            FixtureKind::Designs => {
                let ing = parse_designs(self.text, ex.params)?;
                if let Some(&(a, b)) = ing.duplicates.first() {
                    return Err(Error::Consistency(format!("designs {a} and {b} are isomorphic")));
                }
                if let Some(n) = ex.count {
                    if ing.designs.len() != n {
                        return Err(Error::Consistency(format!(
                            "expected {n} designs, found {}",
                            ing.designs.len()
                        )));
                    }
                }
                FixtureObject::Designs(ing.designs)
            }
            FixtureKind::Resolution => {
                let r = Resolution::from_text(self.text)?;
                check_design(r.design(), ex.params)?;
                FixtureObject::Resolution(r)
            }
        };
        Ok(obj)
    }
}

pub fn fixture(id: &str) -> Result<Fixture> {
    fixtures()
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::Invalid(format!("no fixture named {id}")))
}

pub fn load_fixture(id: &str) -> Result<FixtureObject> {
    fixture(id)?.load()
}

/// The seven Kirkman parades with their labels.
pub fn parades() -> Vec<(String, Resolution)> {
    PARADE_LABELS
        .iter()
        .map(|&l| {
            let r = Resolution::from_text(parade_text(l)).expect("bundled parade parses");
            (l.to_string(), r)
        })
        .collect()
}

/// A resolution of the lines of PG(3, q) into spreads, for the bundled values of `q`.
pub fn pg3_packing(q: usize) -> Result<Resolution> {
    match q {
        2 => Ok(parades().swap_remove(0).1),
        3 => load_fixture("packing-pg3-3")?
            .into_resolution()
            .ok_or_else(|| Error::Invalid("not a resolution".into())),
        _ => Err(Error::Unsupported(format!("no packing of PG(3,{q}) is bundled"))),
    }
}

/// Every symmetric 2-(v,k,λ) design up to isomorphism, for the parameter sets that are bundled.
pub fn symmetric_designs(v: usize, k: usize, lambda: usize) -> Result<Vec<BlockDesign>> {
    let fixture_designs = |id: &str| -> Result<Vec<BlockDesign>> {
        load_fixture(id)?
            .into_designs()
            .ok_or_else(|| Error::Invalid("not a design list".into()))
    };
    match (v, k, lambda) {
        (7, 3, 1) => fixture_designs("design-fano"),
        (11, 5, 2) => Ok(vec![quadratic_residue_design(11)?]),
        (13, 4, 1) => Ok(vec![pg_design(2, 1, 3)?.design]),
        (15, 7, 3) => fixture_designs("designs-15-7-3"),
        (16, 6, 2) => fixture_designs("designs-16-6-2"),
        (21, 5, 1) => Ok(vec![pg_design(2, 1, 4)?.design]),
        _ => Err(Error::Unsupported(format!(
            "no bundled catalog of symmetric 2-({v},{k},{lambda}) designs; ingest one"
        ))),
    }
}

/// Designs read from a catalog, with pairs of indices that turned out isomorphic.
#[derive(Debug, Clone)]
pub struct Ingested {
    pub designs: Vec<BlockDesign>,
    pub keys: Vec<CanonKey>,
    pub duplicates: Vec<(usize, usize)>,
}

/// Reads consecutive designs in the design text format.
///
/// Each record must verify as a 2-design, and as 2-`expected` when given.
pub fn parse_designs(text: &str, expected: Option<(usize, usize, usize)>) -> Result<Ingested> {
    let mut lines = Lines::new(text);
    let mut designs = Vec::new();
    while !lines.at_end() {
        let start = lines.line_no() + 1;
        let d = BlockDesign::read(&mut lines).map_err(|e| record_error(designs.len(), start, e))?;
        check_design(&d, expected).map_err(|e| record_error(designs.len(), start, e))?;
        designs.push(d);
    }
    let keys: Vec<CanonKey> = designs.iter().map(|d| canonical_design(d).key).collect();
    let mut first: HashMap<&CanonKey, usize> = HashMap::new();
    let mut duplicates = Vec::new();
    for (i, k) in keys.iter().enumerate() {
        match first.get(k) {
            Some(&j) => duplicates.push((j, i)),
            None => {
                first.insert(k, i);
            }
        }
    }
    Ok(Ingested {
        designs,
        keys,
        duplicates,
    })
}

fn record_error(record: usize, line: usize, e: Error) -> Error {
    let (line, msg) = match e {
        Error::Parse { line, msg } => (line, msg),
        other => (line, other.to_string()),
    };
    Error::Parse {
        line,
        msg: format!("design record {record}: {msg}"),
    }
}

pub fn ingest_designs(path: &Path, expected: Option<(usize, usize, usize)>) -> Result<Ingested> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    parse_designs(&text, expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        for f in fixtures() {
            f.load().unwrap_or_else(|e| panic!("{}: {e}", f.id));
        }
    }

    #[test]
    fn corrupted_record_is_reported_at_its_line() {
        let text = "3 3\n0 1\n1 2\n0 2\n\n3 3\n0 1\n1 2\n0 0\n";
        match parse_designs(text, None) {
            Err(Error::Parse { line, msg }) => {
                assert!(msg.contains("record 1"), "{msg}");
                assert!(line >= 6, "{line}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicates_are_reported() {
        let fano = BlockDesign::from_text(data!("designs/fano.txt")).unwrap();
        let shifted = fano.relabel_points(&[1, 2, 3, 4, 5, 6, 0]).unwrap();
        let text = format!("{}{}", fano.to_text(), shifted.to_text());
        let ing = parse_designs(&text, Some((7, 3, 1))).unwrap();
        assert_eq!(ing.duplicates, vec![(0, 1)]);
    }
}
