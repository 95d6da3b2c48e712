//! Regression run over the worked examples the engine must reproduce.

use berger_rank::exact_poly::{factorize, parse_poly};
use berger_rank::galois_cert::{certify_galois, replay};
use berger_rank::rank_engine::{audit_verdict, rank_verdict, RankKind, RankVerdict};
use berger_rank::{ExactRat, GaloisVerdict, UniPoly};
use serde_json::json;

use crate::table::Table;
use crate::Output;

fn poly(s: &str) -> UniPoly {
    parse_poly(s).expect("example polynomial parses")
}

fn exact(v: &RankVerdict, want: u64) -> Result<(), String> {
    audit_verdict(v)?;
    if v.kind == RankKind::ExactRank && v.rank == Some(want) {
        Ok(())
    } else {
        Err(format!(
            "got {} {:?}, want ExactRank {want}",
            v.kind, v.rank
        ))
    }
}

fn verdict(f: &str, g: &str, p: u64, r: u32, bound: u64) -> Result<RankVerdict, String> {
    rank_verdict(&poly(f), &poly(g), p, r, bound).map_err(|e| e.to_string())
}

type Check = (String, Result<(), String>);

fn checks(bound: u64) -> Vec<Check> {
    let mut out: Vec<Check> = Vec::new();
    let mut add = |name: String, res: Result<(), String>| out.push((name, res));

    for (s, d) in [("x^4-x-1", -283i64), ("x^4-x+2", 2021)] {
        let got = poly(s).discriminant().map_err(|e| e.to_string());
        add(
            format!("disc({s}) = {d}"),
            got.and_then(|g| {
                (g == ExactRat::from_integer(d.into()))
                    .then_some(())
                    .ok_or(format!("got {g}"))
            }),
        );
    }
    let f2021 = factorize(&2021.into()).map(|f| f.primes());
    add(
        "2021 = 43 * 47".into(),
        match f2021 {
            Ok(p) if p == vec![43.into(), 47.into()] => Ok(()),
            other => Err(format!("{other:?}")),
        },
    );

    let cert = certify_galois(&poly("x^4-x+2"), 5);
    add(
        "Gal(x^4-x+2) = S_4 from p = 2, 3, 5".into(),
        match cert {
            Ok(c) if c.verdict == GaloisVerdict::ProvenSymmetric && replay(&c).is_ok() => Ok(()),
            Ok(c) => Err(format!("verdict {}", c.verdict)),
            Err(e) => Err(e.to_string()),
        },
    );

    add(
        "x^4-x-1, y^2-1 inconclusive at p = 283".into(),
        verdict("x^4-x-1", "y^2-1", 283, 1, bound).and_then(|v| {
            (v.kind == RankKind::Inconclusive)
                .then_some(())
                .ok_or(format!("got {}", v.kind))
        }),
    );
    for p in [3, 5, 7, 11] {
        add(
            format!("x^4-x-1, y^2-1 exact at p = {p}"),
            verdict("x^4-x-1", "y^2-1", p, 1, bound).and_then(|v| exact(&v, 3)),
        );
    }

    for genus in [2u64, 3, 4] {
        let m = 2 * genus + 1;
        let f = format!("x^{m}-x-1");
        for p in [2, 3, 5, 7] {
            for r in 0..=2 {
                add(
                    format!("{f}, y^2-1, p = {p}, r = {r}: rank {}", 2 * genus),
                    verdict(&f, "y^2-1", p, r, bound).and_then(|v| exact(&v, 2 * genus)),
                );
            }
        }
    }

    for (m, q, want) in [(5, 3, 8), (7, 3, 12), (9, 3, 18), (9, 9, 18), (5, 5, 8)] {
        let (p, r) = if q == 9 { (3, 2) } else { (q, 1) };
        let f = format!("x^{m}-x-1");
        add(
            format!("{f}, y^3-1, q = {q}: rank {want}"),
            verdict(&f, "y^3-1", p, r, bound).and_then(|v| exact(&v, want)),
        );
    }

    add(
        "x^6-x-1, y^2-1, p = 3: rank 5 with note".into(),
        verdict("x^6-x-1", "y^2-1", 3, 1, bound).and_then(|v| {
            exact(&v, 5)?;
            v.notes
                .iter()
                .any(|n| n.contains("2g_X+gcd(q,2)-1"))
                .then_some(())
                .ok_or("discrepancy note missing".into())
        }),
    );
    out
}

pub fn run_all(bound: u64) -> Output {
    let results = checks(bound);
    let mut tab = Table::new(&["result", "example"]);
    let mut failed = 0;
    let mut rows = Vec::new();
    for (name, res) in &results {
        let pass = res.is_ok();
        if !pass {
            failed += 1;
        }
        let label = match res {
            Ok(()) => "PASS".to_string(),
            Err(e) => format!("FAIL ({e})"),
        };
        tab.row(vec![label, name.clone()]);
        rows.push(json!({ "example": name, "pass": pass, "detail": res.as_ref().err() }));
    }
    let summary = format!("{} passed, {failed} failed", results.len() - failed);
    let mut out = Output::new(
        json!({ "examples": rows, "passed": results.len() - failed, "failed": failed }),
        format!("{}{summary}\n", tab.render()),
    );
    if failed > 0 {
        out.code = 2;
    }
    out
}
