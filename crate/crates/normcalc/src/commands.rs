//! One function per subcommand, each returning the JSON report.

use normcalc_core::alexander::{alexander_polynomial, euler_polynomial};
use normcalc_core::cabling::{cable_thurston, cable_top_grading, cable_y, CableParams};
use normcalc_core::heegaard::{Admissibility, DomainClass, Generator, NonnegativeSearch};
use normcalc_core::norms::{
    alexander_lower_bound, dual_thurston_polytope, fibered_face_certificate, floer_polytope_alternating,
    seifert_complexity_bound, thurston_norm, GradedRanks, LowerBound,
};
use normcalc_core::polytope::newton;
use normcalc_core::{CohomologyClass, Exponent, Half, LatticePolytope, LinkDiagram};
use serde_json::{json, Value};

use crate::bundled;
use crate::diagram::{load_diagram, NamedDiagram};
use crate::error::CliError;
use crate::format::{self, load_pd, LoadedLink};
use crate::svg;

fn link_summary(l: &LoadedLink) -> Value {
    let d = &l.diagram;
    json!({
        "name": l.name,
        "components": d.component_count(),
        "crossings": d.crossing_count(),
        "alternating": d.is_alternating(),
        "linking_matrix": d.linking_matrix(),
    })
}

/// Floer polytope and ranks when the diagram determines them exactly.
fn exact_floer(d: &LinkDiagram) -> Option<(LatticePolytope, GradedRanks)> {
    if d.is_alternating() && d.is_connected_projection() {
        floer_polytope_alternating(d).ok()
    } else {
        None
    }
}

pub fn alexander(arg: &str) -> Result<Value, CliError> {
    let l = load_pd(arg)?;
    let delta = alexander_polynomial(&l.diagram)?;
    let euler = euler_polynomial(&l.diagram)?;
    Ok(json!({
        "link": link_summary(&l),
        "alexander": format::polynomial(&delta),
        "support": format::exponents(&delta.support()),
        "euler": format::polynomial(&euler),
    }))
}

pub fn norm(arg: &str, h: Option<Vec<i64>>) -> Result<Value, CliError> {
    let l = load_pd(arg)?;
    let n = l.diagram.component_count();
    let h = CohomologyClass::new(h.unwrap_or_else(|| vec![1; n]));
    if h.len() != n {
        return Err(CliError::Usage(format!("--h needs {n} entries, got {}", h.len())));
    }
    let mut out = json!({"link": link_summary(&l), "h": h.pairings()});
    match exact_floer(&l.diagram) {
        Some((p, ranks)) => {
            let r = thurston_norm(&p, &h)?;
            out["exact"] = json!(true);
            out["y"] = format::half(r.y);
            out["x"] = json!(r.x);
            out["meridian_sum"] = json!(r.meridian_sum);
            out["hypothesis_violation"] = json!(r.hypothesis_violation());
            out["floer_polytope"] = format::polytope(&p)?;
            if let Ok(s) = seifert_complexity_bound(&ranks, n) {
                out["top_grading"] = json!({
                    "m": format::half(s.m),
                    "maximizers": format::exponents(&s.maximizers),
                    "seifert_complexity": s.value,
                });
            }
        }
        None => {
            out["exact"] = json!(false);
            out["note"] = json!("diagram is not connected and alternating; only the Alexander lower bound is known");
            match alexander_lower_bound(&l.diagram, &h)? {
                LowerBound::Bound(b) => out["x_lower_bound"] = json!(b),
                LowerBound::NoInformation => {
                    out["x_lower_bound"] = json!(0);
                    out["note"] = json!("Euler polynomial vanishes; no information beyond x >= 0");
                }
            }
        }
    }
    Ok(out)
}

pub fn dual_polytope(arg: &str, svg_out: Option<&str>) -> Result<Value, CliError> {
    let l = load_pd(arg)?;
    let (floer, ranks, exact) = match exact_floer(&l.diagram) {
        Some((p, r)) => (p, Some(r), true),
        None => {
            let e = euler_polynomial(&l.diagram)?;
            if e.is_zero() {
                return Err(CliError::Domain(
                    "Euler polynomial vanishes; the Newton polytope gives no information".into(),
                ));
            }
            (newton(&e)?, None, false)
        }
    };
    let dual = dual_thurston_polytope(&floer)?;
    let mut out = json!({
        "link": link_summary(&l),
        "exact": exact,
        "floer_polytope": format::polytope(&floer)?,
        "dual_polytope": format::polytope(&dual)?,
    });
    if !exact {
        out["note"] = json!("built from the Newton polytope of the Euler polynomial, which is contained in the Floer polytope");
    }
    if let Some(r) = &ranks {
        let dv = dual.vertices()?;
        if dv.len() >= 2 {
            let mut faces = Vec::new();
            for v in &dv {
                let f = fibered_face_certificate(&floer, r, v)?;
                let extremal: Vec<Value> = f
                    .extremal
                    .iter()
                    .map(|(s, k)| json!({"grading": format::exponent(s), "rank": k}))
                    .collect();
                faces.push(json!({
                    "vertex": format::exponent(v),
                    "extremal": extremal,
                    "consistent_with_fibered": f.consistent_with_fibered(),
                }));
            }
            out["fibered_faces"] = Value::Array(faces);
        }
    }
    if let Some(path) = svg_out {
        let doubled = floer.scale(Half::from_int(2))?;
        let text = svg::render(&[
            svg::Layer { polytope: &doubled, label: "2 x Floer polytope", fill: "steelblue" },
            svg::Layer { polytope: &dual, label: "dual Thurston polytope", fill: "darkorange" },
        ])?;
        std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        })?;
        out["svg"] = json!(path);
    }
    Ok(out)
}

pub struct CableArgs<'a> {
    pub p: Vec<i64>,
    pub q: Option<Vec<i64>>,
    pub n: Option<Vec<i64>>,
    pub link: Option<&'a str>,
    pub lk: Option<Vec<Vec<i64>>>,
    pub h0: Option<Vec<Half>>,
}

pub fn cable(a: CableArgs<'_>) -> Result<Value, CliError> {
    let (linking, link) = match (a.link, a.lk) {
        (Some(arg), None) => {
            let l = load_pd(arg)?;
            (l.diagram.linking_matrix(), Some(l))
        }
        (None, Some(m)) => (m, None),
        _ => return Err(CliError::Usage("give exactly one of --link and --lk".into())),
    };
    let c = match (a.q, a.n) {
        (Some(q), None) => CableParams::new(linking, a.p, q)?,
        (None, Some(n)) => CableParams::from_windings(linking, a.p, n)?,
        _ => return Err(CliError::Usage("give exactly one of --q and --n".into())),
    };
    let x_increment = cable_thurston(0, &c);
    let mut out = json!({
        "p": c.p,
        "q": c.q,
        "Q": c.big_q,
        "linking_matrix": c.linking,
        "y_increment": format::half(cable_y(Half::ZERO, &c)),
    });
    match &x_increment {
        Ok(v) => out["x_increment"] = json!(v),
        Err(e) => out["x_increment_error"] = json!(e.to_string()),
    }
    let floer = link.as_ref().and_then(|l| exact_floer(&l.diagram));
    if let Some(l) = &link {
        out["link"] = link_summary(l);
    }
    if let Some((p, _)) = &floer {
        let y_base = p.y_value(&c.p)?;
        let x_base = y_base.twice() - c.p.iter().map(|v| v.abs()).sum::<i64>();
        out["base"] = json!({"y": format::half(y_base), "x": x_base});
        let y = cable_y(y_base, &c);
        out["cable_y"] = format::half(y);
        if let Ok(x) = cable_thurston(x_base, &c) {
            out["cable_x"] = json!(x);
        }
    }
    let h0 = match a.h0 {
        Some(h) => Some(Exponent::from_halves(&h)),
        None => floer
            .as_ref()
            .and_then(|(_, r)| seifert_complexity_bound(r, c.components()).ok())
            .filter(|s| s.unique())
            .map(|s| s.maximizers[0].clone()),
    };
    if let Some(h0) = h0 {
        let h1 = cable_top_grading(&h0, &c)?;
        out["h0"] = format::exponent(&h0);
        out["top_grading"] = format::exponent(&h1);
        out["top_grading_sum"] = format::half(h1.coordinate_sum());
    }
    Ok(out)
}

fn generator_names(nd: &NamedDiagram, g: &Generator) -> Value {
    json!(g.vertices.iter().map(|&v| nd.vertex_names[v].clone()).collect::<Vec<_>>())
}

fn domain_json(nd: &NamedDiagram, d: &DomainClass) -> Value {
    let mut m = serde_json::Map::new();
    for (name, k) in nd.region_names.iter().zip(&d.mult) {
        if *k != 0 {
            m.insert(name.clone(), json!(k));
        }
    }
    Value::Object(m)
}

pub fn heegaard(arg: &str, pair: Option<(usize, usize)>, bound: i64) -> Result<Value, CliError> {
    let nd = load_diagram(arg)?;
    let d = &nd.diagram;
    let gens = d.generators();
    let grading = d.h_gradings()?;
    let chars = d.euler_characteristics()?;
    let euler = d.euler_polynomial()?;
    let v = d.validate(bound);
    let generators: Vec<Value> = gens
        .iter()
        .zip(&grading.gradings)
        .enumerate()
        .map(|(i, (g, s))| {
            json!({
                "index": i,
                "vertices": generator_names(&nd, g),
                "sign": g.sign,
                "grading": format::exponent(s),
            })
        })
        .collect();
    let ranks: Vec<Value> = chars
        .ranks
        .iter()
        .map(|(s, r)| json!({"grading": format::exponent(s), "chain_rank": r, "euler": chars.euler.get(s).copied().unwrap_or(0)}))
        .collect();
    let admissibility = match &v.admissibility {
        Admissibility::Admissible => json!({"status": "admissible"}),
        Admissibility::NotAdmissible(p) => json!({"status": "not admissible", "witness": domain_json(&nd, p)}),
        Admissibility::NoWitnessWithinBound { bound } => json!({"status": "unknown", "bound": bound}),
    };
    let mut out = json!({
        "diagram": nd.name,
        "genus": d.genus(),
        "components": d.component_count(),
        "generators": generators,
        "gradings_pinned": grading.pinned,
        "ranks": ranks,
        "euler": format::polynomial(&euler),
        "periodic_domains": v.periodic_domains.iter().map(|p| domain_json(&nd, p)).collect::<Vec<_>>(),
        "admissibility": admissibility,
        "grading_consistency": d.check_grading_consistency().is_ok(),
        "search_bound": bound,
    });
    if let Some((i, j)) = pair {
        let count = gens.len();
        let (Some(x), Some(y)) = (gens.get(i), gens.get(j)) else {
            return Err(CliError::Usage(format!("generator index out of range (0..{count})")));
        };
        let mut p = json!({"from": i, "to": j});
        match d.domain_between(x, y) {
            Some(phi) => {
                p["domain"] = domain_json(&nd, &phi);
                p["n_w"] = json!(d.n_w(&phi));
                p["n_z"] = json!(d.n_z(&phi));
                match d.maslov_relative(x, y) {
                    Ok(m) => p["maslov_difference"] = json!(m),
                    Err(e) => p["maslov_error"] = json!(e.to_string()),
                }
            }
            None => p["domain"] = Value::Null,
        }
        p["nonnegative"] = match d.nonnegative_class_exists(x, y, bound) {
            NonnegativeSearch::Found(c) => json!({"status": "found", "domain": domain_json(&nd, &c)}),
            NonnegativeSearch::NoBasepointFreeClass => json!({"status": "no basepoint-free class"}),
            NonnegativeSearch::Exhausted => json!({"status": "none"}),
            NonnegativeSearch::NoneWithinBound { bound } => json!({"status": "none within bound", "bound": bound}),
        };
        out["pair"] = p;
    }
    Ok(out)
}

pub fn table() -> Result<Value, CliError> {
    let mut links = Vec::new();
    for b in bundled::LINKS {
        let l = load_pd(b.name)?;
        let delta = alexander_polynomial(&l.diagram)?;
        links.push(json!({
            "name": b.name,
            "source": b.source,
            "components": l.diagram.component_count(),
            "crossings": l.diagram.crossing_count(),
            "alternating": l.diagram.is_alternating(),
            "linking_matrix": l.diagram.linking_matrix(),
            "alexander": delta.to_string(),
        }));
    }
    let diagrams: Vec<Value> = bundled::DIAGRAMS
        .iter()
        .map(|d| json!({"name": d.name, "link": d.link, "source": d.source}))
        .collect();
    Ok(json!({"links": links, "diagrams": diagrams}))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_dual_is_origin() {
        let v = dual_polytope("examples/hopf.json", None).unwrap();
        assert_eq!(v["dual_polytope"]["vertices"], json!([["0", "0"]]));
        assert!(v.get("fibered_faces").is_none());
    }

    #[test]
    fn hopf_cable_report() {
        let v = cable(CableArgs {
            p: vec![2, 3],
            q: Some(vec![7, 7]),
            n: None,
            link: Some("examples/hopf.json"),
            lk: None,
            h0: None,
        })
        .unwrap();
        assert_eq!(v["x_increment"], json!(28));
        assert_eq!(v["cable_y"], json!("15"));
        assert_eq!(v["top_grading"], json!(["6", "9"]));
        assert_eq!(v["top_grading_sum"], json!("15"));
    }

    #[test]
    fn cable_needs_one_source() {
        let a = CableArgs { p: vec![2], q: Some(vec![3]), n: None, link: None, lk: None, h0: None };
        assert_eq!(cable(a).err().unwrap().exit_code(), 1);
    }

    #[test]
    fn norms() {
        let v = norm("trefoil", None).unwrap();
        assert_eq!((v["y"].clone(), v["x"].clone()), (json!("1"), json!(1)));
        let kt = norm("L10n36", Some(vec![1, 0])).unwrap();
        assert_eq!(kt["exact"], json!(false));
        assert!(norm("hopf", Some(vec![1])).is_err());
    }

    #[test]
    fn kt_has_no_dual_polytope() {
        assert_eq!(dual_polytope("L10n36", None).err().unwrap().exit_code(), 2);
    }

    #[test]
    fn heegaard_pair() {
        let v = heegaard("unknot_finger", Some((1, 0)), 6).unwrap();
        assert_eq!(v["pair"]["nonnegative"]["status"], json!("found"));
        assert!(heegaard("trefoil", Some((0, 9)), 6).is_err());
    }

    #[test]
    fn table_lists_everything() {
        let t = table().unwrap();
        assert_eq!(t["links"].as_array().unwrap().len(), bundled::LINKS.len());
    }
}
