//! Built-in example algebras with their documented attached structures.
//!
//! Every entry resolves its parameters to exact scalars before anything is
//! built, so two lookups with equal arguments return identical instances.
//! Attachments carry the structure the source example actually equips the
//! algebra with: a complex structure, a symplectic form, a product
//! splitting, a preferred metric, or several of those at once.

use std::collections::BTreeMap;

use crate::complex::{ComplexStructure, CoframePresentation, DeformationSigma};
use crate::dcx::DComplexStructure;
use crate::exterior::Form;
use crate::harmonic::Metric;
use crate::lie::{parse_salamon, LieAlgebra};
use crate::linalg::Matrix;
use crate::scalar::{parse_scalar, Scalar};

/// A catalog algebra together with everything its defining example attaches
/// to it. The metric defaults to the one making the printed coframe
/// orthonormal; entries without a stated metric get the standard one.
pub struct Instance {
    pub name: String,
    pub algebra: LieAlgebra,
    /// Source text of the structure equations, in whichever grammar the
    /// entry is stated: real shorthand or complex-coframe lines.
    pub presentation: String,
    pub params: BTreeMap<String, Scalar>,
    pub complex: Option<ComplexStructure>,
    pub symplectic: Option<Form>,
    pub dcomplex: Option<DComplexStructure>,
    pub metric: Metric,
}

#[derive(Clone, Copy)]
pub struct EntryInfo {
    pub name: &'static str,
    pub summary: &'static str,
    /// Parameter names with default values, parseable by `parse_scalar`.
    pub params: &'static [(&'static str, &'static str)],
}

pub const ENTRIES: &[EntryInfo] = &[
    EntryInfo {
        name: "iwasawa",
        summary: "complex 2-step nilpotent, d phi3 = -phi1^phi2",
        params: &[],
    },
    EntryInfo {
        name: "iwasawa_def",
        summary: "deformation family d phi3 in the span of phi^{1,2} and the (1,1) words",
        params: &[
            ("s12", "-1"),
            ("s11b", "0"),
            ("s12b", "0"),
            ("s21b", "0"),
            ("s22b", "0"),
        ],
    },
    EntryInfo {
        name: "iwasawa_ak",
        summary: "real Iwasawa equations with the compatible almost-Kaehler pair (J, e16+e25+e34)",
        params: &[],
    },
    EntryInfo {
        name: "h7",
        summary: "(0,0,0,23,13,12) with the stretched almost-complex J_alpha and omega_alpha",
        params: &[("alpha", "2")],
    },
    EntryInfo {
        name: "h16",
        summary: "(0,0,0,12,14,24) with the pairwise J; full but not pure in degree 2",
        params: &[],
    },
    EntryInfo {
        name: "h2",
        summary: "(0,0,0,0,12,34) with the pairwise J; pure but not full in degree 2",
        params: &[],
    },
    EntryInfo {
        name: "h_0413",
        summary: "(0,0,0,0,12,13), plain algebra form of the dcx_1 nilmanifold",
        params: &[],
    },
    EntryInfo {
        name: "etabeta5",
        summary: "complex rank 5, d phi5 = -phi12 - phi34",
        params: &[],
    },
    EntryInfo {
        name: "n6c",
        summary: "sol(3) x sol(3) equations with the pairwise J and a closed invariant omega",
        params: &[("c", "1")],
    },
    EntryInfo {
        name: "nakamura_cs",
        summary: "completely-solvable Nakamura algebra with its complex structure and omega",
        params: &[],
    },
    EntryInfo {
        name: "nakamura_J'",
        summary: "Nakamura algebra with the non-integrable pairwise J' and almost-Kaehler omega'",
        params: &[],
    },
    EntryInfo {
        name: "sympl_n1",
        summary: "(0,0,0,12,14-23,15+34) with omega = e16 + e35 + e24",
        params: &[],
    },
    EntryInfo {
        name: "g34_g35",
        summary: "(-13,23,0,-56,46,0) with omega = e12 + e36 + e45; hard Lefschetz holds",
        params: &[],
    },
    EntryInfo {
        name: "solv_h3",
        summary: "(-23,0,0,-46,56,0) with omega = e12 + e36 + e45 and the product splitting",
        params: &[],
    },
    EntryInfo {
        name: "dcx_1",
        summary: "(0,0,0,0,12,13) with the sign splitting -++--+ and its compatible omega",
        params: &[],
    },
    EntryInfo {
        name: "dcx_2",
        summary: "(0,0,0,12,13+14,24) with the alternating sign splitting",
        params: &[],
    },
    EntryInfo {
        name: "dcx_4d",
        summary: "(0,0,12,0) with a non-integrable splitting",
        params: &[],
    },
    EntryInfo {
        name: "dcx_solv",
        summary: "(0,0,23,-24) with the tilted splitting minus = span(e1, e4 + t e2)",
        params: &[("t", "0")],
    },
    EntryInfo {
        name: "dcx_6a",
        summary: "(0,0,0,12,13,24) with plus = span(e1, (1-t)e3 + t e4, e5)",
        params: &[("t", "0")],
    },
    EntryInfo {
        name: "dcx_nonuni",
        summary: "non-unimodular (0,0,0,13+34) with the sign splitting ++--",
        params: &[],
    },
    EntryInfo {
        name: "kt",
        summary: "(0,0,14,12), 4-dim nilpotent carrying no integrable complex structure",
        params: &[],
    },
    EntryInfo {
        name: "s3t3",
        summary: "(23,-13,12,0,0,0) with phi^j = e^j + i e^{j+3}; full but not pure",
        params: &[],
    },
    EntryInfo {
        name: "torus",
        summary: "abelian of dimension n; even n carries the pairwise J, omega, and splitting",
        params: &[("n", "6")],
    },
];

pub fn entry_info(name: &str) -> Option<&'static EntryInfo> {
    let canonical = canonical_name(name)?;
    ENTRIES.iter().find(|e| e.name == canonical)
}

/// Accepts the exact entry name; the apostrophe in nakamura_J' may be
/// dropped for shell convenience.
fn canonical_name(name: &str) -> Option<&'static str> {
    for e in ENTRIES {
        if e.name == name {
            return Some(e.name);
        }
    }
    if name == "nakamura_J" || name == "nakamura_j" {
        return Some("nakamura_J'");
    }
    None
}

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

/// Resolves parameters against the entry's declared list: unknown names are
/// rejected, missing ones take their defaults.
fn resolve_params(
    info: &EntryInfo,
    given: &BTreeMap<String, Scalar>,
) -> Result<BTreeMap<String, Scalar>, String> {
    for name in given.keys() {
        if !info.params.iter().any(|(p, _)| p == name) {
            return Err(format!(
                "unknown parameter '{name}' for catalog entry '{}'",
                info.name
            ));
        }
    }
    let mut out = BTreeMap::new();
    for (pname, default) in info.params {
        let v = match given.get(*pname) {
            Some(v) => v.clone(),
            None => parse_scalar(default).expect("catalog defaults parse"),
        };
        out.insert((*pname).to_string(), v);
    }
    Ok(out)
}

pub fn build(name: &str, params: &BTreeMap<String, Scalar>) -> Result<Instance, String> {
    let canonical =
        canonical_name(name).ok_or_else(|| format!("unknown catalog entry '{name}'"))?;
    let info = entry_info(canonical).expect("canonical names are listed");
    let p = resolve_params(info, params)?;
    match canonical {
        "iwasawa" => build_iwasawa(),
        "iwasawa_def" => build_iwasawa_def(&p),
        "iwasawa_ak" => build_iwasawa_ak(),
        "h7" => build_h7(&p),
        "h16" => build_h16(),
        "h2" => build_h2(),
        "h_0413" => build_h0413(),
        "etabeta5" => build_etabeta5(),
        "n6c" => build_n6c(&p),
        "nakamura_cs" => build_nakamura_cs(),
        "nakamura_J'" => build_nakamura_alt(),
        "sympl_n1" => build_sympl_n1(),
        "g34_g35" => build_g34_g35(),
        "solv_h3" => build_solv_h3(),
        "dcx_1" => build_dcx_1(),
        "dcx_2" => build_dcx_2(),
        "dcx_4d" => build_dcx_4d(),
        "dcx_solv" => build_dcx_solv(&p),
        "dcx_6a" => build_dcx_6a(&p),
        "dcx_nonuni" => build_dcx_nonuni(),
        "kt" => build_kt(),
        "s3t3" => build_s3t3(),
        "torus" => build_torus(&p),
        _ => unreachable!(),
    }
}

pub fn build_default(name: &str) -> Result<Instance, String> {
    build(name, &BTreeMap::new())
}

/// The five rank-distinguished representatives of the deformation classes,
/// in presentation order (s12, s11b, s12b, s21b, s22b).
pub fn deformation_representatives() -> Vec<(&'static str, DeformationSigma)> {
    let m1 = Scalar::from_int(-1);
    let sigma = |s12: Scalar, s11b: Scalar, s12b: Scalar, s21b: Scalar, s22b: Scalar| {
        DeformationSigma {
            s12,
            s11b,
            s12b,
            s21b,
            s22b,
        }
    };
    vec![
        (
            "i",
            sigma(
                m1.clone(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
            ),
        ),
        (
            "ii.a",
            sigma(
                m1.clone(),
                Scalar::one(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
            ),
        ),
        (
            "ii.b",
            sigma(
                m1.clone(),
                Scalar::one(),
                Scalar::i(),
                Scalar::zero(),
                Scalar::zero(),
            ),
        ),
        (
            "iii.a",
            sigma(
                m1.clone(),
                Scalar::one(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::one(),
            ),
        ),
        (
            "iii.b",
            sigma(m1, Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::i()),
        ),
    ]
}

fn no_params() -> BTreeMap<String, Scalar> {
    BTreeMap::new()
}

fn salamon(src: &str) -> LieAlgebra {
    parse_salamon(src, &no_params()).expect("catalog equations parse")
}

fn pairs(list: &[[u8; 2]]) -> Form {
    let mut f = Form::zero();
    for p in list {
        f = f.add(&Form::basis(p));
    }
    f
}

fn ints(rows: &[&[i64]]) -> Matrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
            .collect(),
        rows[0].len(),
    )
}

fn basis_vec(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i - 1] = Scalar::one();
    v
}

/// Rows phi^j = e^{2j-1} + i e^{2j}: the complex coordinates pair adjacent
/// real directions.
fn adjacent_phi_rows(n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|j| {
            let mut row = vec![Scalar::zero(); 2 * n];
            row[2 * j] = Scalar::one();
            row[2 * j + 1] = Scalar::i();
            row
        })
        .collect()
}

/// Rows phi^j = e^j + i e^{j+n}: the complex coordinates pair the two
/// halves of the basis.
fn split_phi_rows(n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|j| {
            let mut row = vec![Scalar::zero(); 2 * n];
            row[j] = Scalar::one();
            row[j + n] = Scalar::i();
            row
        })
        .collect()
}

fn instance(
    info: &EntryInfo,
    algebra: LieAlgebra,
    presentation: String,
    params: BTreeMap<String, Scalar>,
) -> Instance {
    let metric = Metric::standard(algebra.dim);
    Instance {
        name: info.name.to_string(),
        algebra,
        presentation,
        params,
        complex: None,
        symplectic: None,
        dcomplex: None,
        metric,
    }
}

fn build_iwasawa() -> Result<Instance, String> {
    let info = entry_info("iwasawa").unwrap();
    let src = "complex 3\nd f1 = 0\nd f2 = 0\nd f3 = -1*f1f2\n";
    let pres = CoframePresentation::parse(src, &no_params()).map_err(|e| e.to_string())?;
    let cs = ComplexStructure::from_coframe(&pres)?;
    let mut inst = instance(info, cs.real.clone(), src.to_string(), BTreeMap::new());
    inst.complex = Some(cs);
    Ok(inst)
}

fn build_iwasawa_def(p: &BTreeMap<String, Scalar>) -> Result<Instance, String> {
    let info = entry_info("iwasawa_def").unwrap();
    let sigma = DeformationSigma {
        s12: p["s12"].clone(),
        s11b: p["s11b"].clone(),
        s12b: p["s12b"].clone(),
        s21b: p["s21b"].clone(),
        s22b: p["s22b"].clone(),
    };
    let pres = sigma.presentation();
    let cs = ComplexStructure::from_coframe(&pres)?;
    let line = |label: &str, s: &Scalar| format!("{label}*({s})");
    let src = format!(
        "complex 3; d f3 = {} + {} + {} + {} + {}",
        line("f1f2", &sigma.s12),
        line("f1F1", &sigma.s11b),
        line("f1F2", &sigma.s12b),
        line("f2F1", &sigma.s21b),
        line("f2F2", &sigma.s22b),
    );
    let mut inst = instance(info, cs.real.clone(), src, p.clone());
    inst.complex = Some(cs);
    Ok(inst)
}

fn build_iwasawa_ak() -> Result<Instance, String> {
    let info = entry_info("iwasawa_ak").unwrap();
    let src = "(0,0,0,0,-13+24,-14-23)";
    let g = salamon(src);
    // Frame images: e1 -> e6, e2 -> e5, e3 -> e4 and back with a sign.
    let frame = ints(&[
        &[0, 0, 0, 0, 0, -1],
        &[0, 0, 0, 0, -1, 0],
        &[0, 0, 0, -1, 0, 0],
        &[0, 0, 1, 0, 0, 0],
        &[0, 1, 0, 0, 0, 0],
        &[1, 0, 0, 0, 0, 0],
    ]);
    let cs = ComplexStructure::from_j(&g, &frame.transpose())?;
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.complex = Some(cs);
    inst.symplectic = Some(pairs(&[[1, 6], [2, 5], [3, 4]]));
    Ok(inst)
}

fn build_h7(p: &BTreeMap<String, Scalar>) -> Result<Instance, String> {
    let info = entry_info("h7").unwrap();
    let alpha = p["alpha"].clone();
    if !alpha.is_real() {
        return Err("parameter alpha must be real".to_string());
    }
    if alpha.is_zero() || alpha.is_one() {
        return Err("parameter alpha must avoid 0 and 1; both degenerate omega".to_string());
    }
    let src = "(0,0,0,23,13,12)";
    let g = salamon(src);
    let am1 = alpha.clone() - Scalar::one();
    // phi^j = E^j + i E^{j+3} in the rescaled coframe E = (e1, a e2,
    // (a-1) e3, e4, e5, e6).
    let mut rows = Vec::new();
    let mut r1 = vec![Scalar::zero(); 6];
    r1[0] = Scalar::one();
    r1[3] = Scalar::i();
    rows.push(r1);
    let mut r2 = vec![Scalar::zero(); 6];
    r2[1] = alpha.clone();
    r2[4] = Scalar::i();
    rows.push(r2);
    let mut r3 = vec![Scalar::zero(); 6];
    r3[2] = am1.clone();
    r3[5] = Scalar::i();
    rows.push(r3);
    let cs = ComplexStructure::from_frame(&g, rows)?;

    let mut omega = Form::basis(&[1, 4]);
    omega = omega.add(&Form::basis(&[2, 5]).scale(&alpha));
    omega = omega.add(&Form::basis(&[3, 6]).scale(&am1));

    let coframe = Matrix::from_rows(
        vec![
            basis_vec(6, 1),
            {
                let mut v = vec![Scalar::zero(); 6];
                v[1] = alpha.clone();
                v
            },
            {
                let mut v = vec![Scalar::zero(); 6];
                v[2] = am1.clone();
                v
            },
            basis_vec(6, 4),
            basis_vec(6, 5),
            basis_vec(6, 6),
        ],
        6,
    );
    let metric = Metric::from_coframe(&coframe)?;

    let mut inst = instance(info, g, src.to_string(), p.clone());
    inst.complex = Some(cs);
    inst.symplectic = Some(omega);
    inst.metric = metric;
    Ok(inst)
}

fn build_h16() -> Result<Instance, String> {
    let info = entry_info("h16").unwrap();
    let src = "(0,0,0,12,14,24)";
    let g = salamon(src);
    let cs = ComplexStructure::from_frame(&g, adjacent_phi_rows(3))?;
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.complex = Some(cs);
    Ok(inst)
}

fn build_h2() -> Result<Instance, String> {
    let info = entry_info("h2").unwrap();
    let src = "(0,0,0,0,12,34)";
    let g = salamon(src);
    let cs = ComplexStructure::from_frame(&g, adjacent_phi_rows(3))?;
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.complex = Some(cs);
    Ok(inst)
}

fn build_h0413() -> Result<Instance, String> {
    let info = entry_info("h_0413").unwrap();
    let src = "(0,0,0,0,12,13)";
    Ok(instance(info, salamon(src), src.to_string(), BTreeMap::new()))
}

fn build_etabeta5() -> Result<Instance, String> {
    let info = entry_info("etabeta5").unwrap();
    let src = "complex 5\nd f1 = 0\nd f2 = 0\nd f3 = 0\nd f4 = 0\nd f5 = -1*f1f2-1*f3f4\n";
    let pres = CoframePresentation::parse(src, &no_params()).map_err(|e| e.to_string())?;
    let cs = ComplexStructure::from_coframe(&pres)?;
    let mut inst = instance(info, cs.real.clone(), src.to_string(), BTreeMap::new());
    inst.complex = Some(cs);
    Ok(inst)
}

fn build_n6c(p: &BTreeMap<String, Scalar>) -> Result<Instance, String> {
    let info = entry_info("n6c").unwrap();
    let c = p["c"].clone();
    if !c.is_real() {
        return Err("parameter c must be real".to_string());
    }
    let mut params = no_params();
    params.insert("c".to_string(), c.clone());
    let src = "(c*13,-c*23,0,c*46,-c*56,0)";
    let g = parse_salamon(src, &params).map_err(|e| e.to_string())?;
    let cs = ComplexStructure::from_frame(&g, adjacent_phi_rows(3))?;
    let mut inst = instance(info, g, src.to_string(), p.clone());
    inst.complex = Some(cs);
    inst.symplectic = Some(pairs(&[[1, 2], [3, 6], [4, 5]]));
    Ok(inst)
}

fn build_nakamura_cs() -> Result<Instance, String> {
    let info = entry_info("nakamura_cs").unwrap();
    let src = "(0,0,13,-14,15,-16)";
    let g = salamon(src);
    // phi1 = (e1 + i e2)/2, phi2 = e3 + i e5, phi3 = e4 + i e6.
    let half = Scalar::from_ratio(1, 2);
    let half_i = Scalar::i().mul(&half);
    let mut r1 = vec![Scalar::zero(); 6];
    r1[0] = half.clone();
    r1[1] = half_i;
    let mut r2 = vec![Scalar::zero(); 6];
    r2[2] = Scalar::one();
    r2[4] = Scalar::i();
    let mut r3 = vec![Scalar::zero(); 6];
    r3[3] = Scalar::one();
    r3[5] = Scalar::i();
    let cs = ComplexStructure::from_frame(&g, vec![r1, r2, r3])?;

    let coframe = Matrix::from_rows(
        vec![
            {
                let mut v = vec![Scalar::zero(); 6];
                v[0] = half.clone();
                v
            },
            {
                let mut v = vec![Scalar::zero(); 6];
                v[1] = half;
                v
            },
            basis_vec(6, 3),
            basis_vec(6, 4),
            basis_vec(6, 5),
            basis_vec(6, 6),
        ],
        6,
    );

    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.complex = Some(cs);
    inst.symplectic = Some(pairs(&[[1, 2], [3, 4], [5, 6]]));
    inst.metric = Metric::from_coframe(&coframe)?;
    Ok(inst)
}

fn build_nakamura_alt() -> Result<Instance, String> {
    let info = entry_info("nakamura_J'").unwrap();
    let src = "(0,0,13,-14,15,-16)";
    let g = salamon(src);
    let cs = ComplexStructure::from_frame(&g, adjacent_phi_rows(3))?;
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.complex = Some(cs);
    inst.symplectic = Some(pairs(&[[1, 2], [3, 4], [5, 6]]));
    Ok(inst)
}

fn build_sympl_n1() -> Result<Instance, String> {
    let info = entry_info("sympl_n1").unwrap();
    let src = "(0,0,0,12,14-23,15+34)";
    let g = salamon(src);
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.symplectic = Some(pairs(&[[1, 6], [3, 5], [2, 4]]));
    Ok(inst)
}

fn build_g34_g35() -> Result<Instance, String> {
    let info = entry_info("g34_g35").unwrap();
    let src = "(-13,23,0,-56,46,0)";
    let g = salamon(src);
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.symplectic = Some(pairs(&[[1, 2], [3, 6], [4, 5]]));
    Ok(inst)
}

fn build_solv_h3() -> Result<Instance, String> {
    let info = entry_info("solv_h3").unwrap();
    let src = "(-23,0,0,-46,56,0)";
    let g = salamon(src);
    let k = DComplexStructure::from_signs(&g, "(+++---)")?;
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.symplectic = Some(pairs(&[[1, 2], [3, 6], [4, 5]]));
    inst.dcomplex = Some(k);
    Ok(inst)
}

fn build_dcx_1() -> Result<Instance, String> {
    let info = entry_info("dcx_1").unwrap();
    let src = "(0,0,0,0,12,13)";
    let g = salamon(src);
    let k = DComplexStructure::from_signs(&g, "(-++--+)")?;
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.dcomplex = Some(k);
    inst.symplectic = Some(pairs(&[[1, 6], [2, 5], [3, 4]]));
    Ok(inst)
}

fn build_dcx_2() -> Result<Instance, String> {
    let info = entry_info("dcx_2").unwrap();
    let src = "(0,0,0,12,13+14,24)";
    let g = salamon(src);
    let k = DComplexStructure::from_signs(&g, "(+-+-+-)")?;
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.dcomplex = Some(k);
    inst.symplectic = Some(pairs(&[[1, 6], [2, 5], [3, 4]]));
    Ok(inst)
}

fn build_dcx_4d() -> Result<Instance, String> {
    let info = entry_info("dcx_4d").unwrap();
    let src = "(0,0,12,0)";
    let g = salamon(src);
    let mut tilted = basis_vec(4, 4);
    tilted[1] = Scalar::from_int(-1);
    let k = DComplexStructure::from_splitting(
        &g,
        &[basis_vec(4, 1), tilted],
        &[basis_vec(4, 2), basis_vec(4, 3)],
    )?;
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.dcomplex = Some(k);
    Ok(inst)
}

fn build_dcx_solv(p: &BTreeMap<String, Scalar>) -> Result<Instance, String> {
    let info = entry_info("dcx_solv").unwrap();
    let t = p["t"].clone();
    if !t.is_real() {
        return Err("parameter t must be real".to_string());
    }
    let src = "(0,0,23,-24)";
    let g = salamon(src);
    let mut tilted = basis_vec(4, 4);
    tilted[1] = t.clone();
    let k = DComplexStructure::from_splitting(
        &g,
        &[basis_vec(4, 2), basis_vec(4, 3)],
        &[basis_vec(4, 1), tilted],
    )?;
    let mut inst = instance(info, g, src.to_string(), p.clone());
    inst.dcomplex = Some(k);
    Ok(inst)
}

fn build_dcx_6a(p: &BTreeMap<String, Scalar>) -> Result<Instance, String> {
    let info = entry_info("dcx_6a").unwrap();
    let t = p["t"].clone();
    if !t.is_real() {
        return Err("parameter t must be real".to_string());
    }
    let src = "(0,0,0,12,13,24)";
    let g = salamon(src);
    let s = Scalar::one() - t.clone();
    let mut mid_plus = vec![Scalar::zero(); 6];
    mid_plus[2] = s.clone();
    mid_plus[3] = t.clone();
    let mut mid_minus = vec![Scalar::zero(); 6];
    mid_minus[2] = t.clone();
    mid_minus[3] = -s;
    let k = DComplexStructure::from_splitting(
        &g,
        &[basis_vec(6, 1), mid_plus, basis_vec(6, 5)],
        &[basis_vec(6, 2), mid_minus, basis_vec(6, 6)],
    )?;
    let mut inst = instance(info, g, src.to_string(), p.clone());
    inst.dcomplex = Some(k);
    Ok(inst)
}

fn build_dcx_nonuni() -> Result<Instance, String> {
    let info = entry_info("dcx_nonuni").unwrap();
    let src = "(0,0,0,13+34)";
    let g = salamon(src);
    let k = DComplexStructure::from_signs(&g, "(++--)")?;
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.dcomplex = Some(k);
    Ok(inst)
}

fn build_kt() -> Result<Instance, String> {
    let info = entry_info("kt").unwrap();
    let src = "(0,0,14,12)";
    let g = salamon(src);
    // Frame images: e1 -> -e2, e3 -> -e4.
    let frame = ints(&[
        &[0, 1, 0, 0],
        &[-1, 0, 0, 0],
        &[0, 0, 0, 1],
        &[0, 0, -1, 0],
    ]);
    let cs = ComplexStructure::from_j(&g, &frame.transpose())?;
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.complex = Some(cs);
    Ok(inst)
}

fn build_s3t3() -> Result<Instance, String> {
    let info = entry_info("s3t3").unwrap();
    let src = "(23,-13,12,0,0,0)";
    let g = salamon(src);
    let cs = ComplexStructure::from_frame(&g, split_phi_rows(3))?;
    let mut inst = instance(info, g, src.to_string(), BTreeMap::new());
    inst.complex = Some(cs);
    Ok(inst)
}

fn build_torus(p: &BTreeMap<String, Scalar>) -> Result<Instance, String> {
    let info = entry_info("torus").unwrap();
    let nv = &p["n"];
    let n = scalar_to_dim(nv).ok_or("parameter n must be an integer between 1 and 10")?;
    let g = LieAlgebra::abelian(n);
    let src = g.to_salamon();
    let mut inst = instance(info, g.clone(), src, p.clone());
    if n % 2 == 0 {
        let half = n / 2;
        inst.complex = Some(ComplexStructure::from_frame(&g, split_phi_rows(half))?);
        let mut omega = Form::zero();
        for j in 1..=half {
            omega = omega.add(&Form::basis(&[j as u8, (j + half) as u8]));
        }
        inst.symplectic = Some(omega);
        let plus: Vec<_> = (1..=half).map(|i| basis_vec(n, i)).collect();
        let minus: Vec<_> = (half + 1..=n).map(|i| basis_vec(n, i)).collect();
        inst.dcomplex = Some(DComplexStructure::from_splitting(&g, &plus, &minus)?);
    }
    Ok(inst)
}

fn scalar_to_dim(s: &Scalar) -> Option<usize> {
    if !s.is_real() {
        return None;
    }
    let r = &s.re;
    if !r.is_integer() {
        return None;
    }
    let n = r.to_integer();
    use num::ToPrimitive;
    let n = n.to_usize()?;
    if (1..=10).contains(&n) {
        Some(n)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohom;
    use crate::lie::poincare_symmetric;

    #[test]
    fn every_entry_builds_with_defaults() {
        for e in ENTRIES {
            let inst = build_default(e.name).unwrap();
            assert_eq!(inst.name, e.name);
            inst.algebra.validate().unwrap();
            let d = inst.algebra.differential();
            assert!(d.compose(&d).is_zero(), "{}: d^2 != 0", e.name);
            if let Some(omega) = &inst.symplectic {
                assert!(
                    d.apply(omega).is_zero(),
                    "{}: attached omega is not closed",
                    e.name
                );
            }
            if inst.algebra.is_unimodular() {
                assert!(poincare_symmetric(&inst.algebra.betti()), "{}", e.name);
            }
        }
    }

    #[test]
    fn unknown_names_and_parameters_are_rejected() {
        assert!(build_default("iwasava").is_err());
        let mut p = BTreeMap::new();
        p.insert("q".to_string(), Scalar::one());
        assert!(build("n6c", &p).is_err());
        assert!(build("torus", &{
            let mut p = BTreeMap::new();
            p.insert("n".to_string(), Scalar::from_ratio(1, 2));
            p
        })
        .is_err());
    }

    #[test]
    fn alias_resolves_the_primed_nakamura_entry() {
        let a = build_default("nakamura_J'").unwrap();
        let b = build_default("nakamura_J").unwrap();
        assert_eq!(a.name, b.name);
        assert_eq!(a.algebra.to_salamon(), b.algebra.to_salamon());
    }

    #[test]
    fn stated_cohomology_pins_hold() {
        // Second cohomology of the solvable product is three-dimensional
        // with the expected basis classes.
        let n6c = build_default("n6c").unwrap();
        let h2 = cohom::de_rham(&n6c.algebra, 2);
        assert_eq!(h2.dim(), 3);
        for pair in [[1u8, 2], [3, 6], [4, 5]] {
            let v = Form::basis(&pair).to_vec(6, 2);
            assert!(!h2.is_zero_class(&v));
        }

        let nak = build_default("nakamura_cs").unwrap();
        assert_eq!(
            nak.algebra.to_salamon(),
            "(0,0,13,-14,15,-16)",
            "third coframe equation reads d e3 = e13"
        );
        assert!(nak.complex.as_ref().unwrap().is_integrable());

        let torus3 = build("torus", &{
            let mut p = BTreeMap::new();
            p.insert("n".to_string(), Scalar::from_int(3));
            p
        })
        .unwrap();
        assert_eq!(torus3.algebra.betti(), vec![1, 3, 3, 1]);
        assert!(torus3.complex.is_none());
    }

    #[test]
    fn attached_structures_have_documented_types() {
        let iw = build_default("iwasawa").unwrap();
        assert!(iw.complex.as_ref().unwrap().is_integrable());
        assert_eq!(iw.algebra.nilpotency_step(), Some(2));

        let s3 = build_default("s3t3").unwrap();
        assert!(!s3.complex.as_ref().unwrap().is_integrable());

        let kt = build_default("kt").unwrap();
        assert!(!kt.complex.as_ref().unwrap().is_integrable());

        let ak = build_default("iwasawa_ak").unwrap();
        assert!(!ak.complex.as_ref().unwrap().is_integrable());

        let d1 = build_default("dcx_1").unwrap();
        let k = d1.dcomplex.as_ref().unwrap();
        assert!(k.integrable && k.abelian);
        assert!(k.is_dkahler(d1.symplectic.as_ref().unwrap()));

        let sweep_start = build_default("dcx_6a").unwrap();
        assert!(sweep_start.dcomplex.as_ref().unwrap().integrable);
    }

    #[test]
    fn deformation_representatives_classify_as_labeled() {
        for (label, sigma) in deformation_representatives() {
            assert_eq!(sigma.class().to_string(), label);
        }
        let classical = build_default("iwasawa_def").unwrap();
        let iw = build_default("iwasawa").unwrap();
        assert_eq!(
            classical.algebra.to_salamon(),
            iw.algebra.to_salamon(),
            "default parameters reproduce the undeformed equations"
        );
    }
}
