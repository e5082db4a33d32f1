//! Built-in store of every algebra, triple system, stabilizer and
//! parametrized Bol-complement family used by the verification suites,
//! validated on load, plus the JSON import/export for custom entries.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::lie::{
    contains_nonzero_ideal, is_bol_complement, is_lie_triple_system,
    is_subalgebra, LieAlgebraDef, Subspace, Vector,
};
use crate::linalg::Mat;
use crate::report::VerificationReport;
use crate::scalar::{format_rational, parse_rational};
use crate::{rat, Error, Rat, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Algebra,
    TripleSystem,
    Stabilizer,
    BolFamily,
    MatrixRep,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryInfo {
    pub id: String,
    pub kind: EntryKind,
    pub paper_section: String,
}

/// Parameters for one member of a Bol-complement family, with the family's
/// domain constraint enforced at construction.
#[derive(Debug, Clone)]
pub struct FamilyParams(pub Vec<(String, Rat)>);

impl FamilyParams {
    pub fn get(&self, name: &str) -> Option<&Rat> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

pub struct Catalog {
    algebras: BTreeMap<String, LieAlgebraDef<Rat>>,
    subspaces: BTreeMap<String, (String, Subspace<Rat>, EntryKind, String)>,
    sections: BTreeMap<String, String>,
}

impl Catalog {
    /// Builds and returns the built-in catalog. Does not run validation;
    /// see [`Catalog::validate`] (the CLI and test suites do).
    pub fn builtin() -> Self {
        let mut algebras = BTreeMap::new();
        let mut subspaces = BTreeMap::new();
        let mut sections = BTreeMap::new();

        for alg in [b1(), b2(), b3(), b4(), case51(), case7(), prod_sl2()] {
            sections.insert(
                alg.name.clone(),
                match alg.name.as_str() {
                    "B1" => "3-B1",
                    "B2" => "3-B2",
                    "B3" => "3-B3",
                    "B4" => "3-B4",
                    "case5.1" => "5.1",
                    "case7" => "7",
                    "prod_sl2" => "4",
                    _ => "",
                }
                .into(),
            );
            algebras.insert(alg.name.clone(), alg);
        }

        let mut add = |id: &str,
                       alg_id: &str,
                       gens: Vec<Vec<(&str, Rat)>>,
                       kind: EntryKind,
                       section: &str,
                       algebras: &BTreeMap<String, LieAlgebraDef<Rat>>| {
            let alg = &algebras[alg_id];
            let vecs: Vec<Vector<Rat>> = gens
                .iter()
                .map(|terms| alg.combo(&terms.iter().map(|(l, c)| (*l, c.clone())).collect::<Vec<_>>()).unwrap())
                .collect();
            let s = Subspace::span(alg, &vecs).unwrap();
            subspaces.insert(id.to_string(), (alg_id.to_string(), s, kind, section.to_string()));
        };

        let one = || rat(1, 1);
        use EntryKind::*;

        // B1: triple systems and stabilizers of the simple-group case
        add("m_4.1", "B1", vec![vec![("H", one())], vec![("T", one())], vec![("iU", one())]], TripleSystem, "4.1", &algebras);
        add("m_4.2", "B1", vec![vec![("H", one())], vec![("iT", one())], vec![("U", one())]], TripleSystem, "4.2", &algebras);
        add("h_4.1", "B1", vec![vec![("iH", one())], vec![("iT", one())], vec![("U", one())]], Stabilizer, "4.1", &algebras);
        add("h_4.2", "B1", vec![vec![("iH", one())], vec![("T", one())], vec![("iU", one())]], Stabilizer, "4.2", &algebras);

        // B2: centre-extended systems and the 1-dimensional stabilizers
        add("m_5.2", "B2", vec![vec![("e1", one())], vec![("e2", one())], vec![("e4", one())]], TripleSystem, "5.2", &algebras);
        add("m_5.3", "B2", vec![vec![("e1", one())], vec![("e2", one())], vec![("e3", one())]], TripleSystem, "5.3", &algebras);
        add("h1_sec5_k0", "B2", vec![vec![("e2", one())]], Stabilizer, "5", &algebras);
        add("h1_sec5_k1", "B2", vec![vec![("e2", one()), ("e1", one())]], Stabilizer, "5", &algebras);
        add("h2_sec5_k0", "B2", vec![vec![("e3", one()), ("e4", one())]], Stabilizer, "5", &algebras);
        add("h2_sec5_k1", "B2", vec![vec![("e3", one()), ("e4", one()), ("e1", one())]], Stabilizer, "5", &algebras);
        add("h3_sec5_k0", "B2", vec![vec![("e4", one())]], Stabilizer, "5", &algebras);
        add("h3_sec5_k1", "B2", vec![vec![("e4", one()), ("e1", one())]], Stabilizer, "5", &algebras);

        // B3: euclidean motion case
        add("m_6.1", "B3", vec![vec![("e1", one())], vec![("e2", one())], vec![("e3", one())]], TripleSystem, "6.1", &algebras);
        add("h_6.1", "B3", vec![vec![("e2", one())], vec![("e3", one())], vec![("e4", one())]], Stabilizer, "6.1", &algebras);

        // B4: pseudo-euclidean motion case
        add("m_6.2", "B4", vec![vec![("e2", one())], vec![("e4", one())], vec![("e6", one())]], TripleSystem, "6.2", &algebras);
        add("m_6.3", "B4", vec![vec![("e1", one())], vec![("e2", one())], vec![("e3", one())]], TripleSystem, "6.3", &algebras);
        add("h_sec7_a", "B4", vec![vec![("e2", one())], vec![("e5", one())], vec![("e1", one()), ("e6", one())]], Stabilizer, "7", &algebras);
        add("h_sec7_b", "B4", vec![vec![("e2", one()), ("e5", one())], vec![("e1", one())], vec![("e6", one())]], Stabilizer, "7", &algebras);
        add("h_sec7_c", "B4", vec![vec![("e3", one()), ("e4", one())], vec![("e5", one())], vec![("e1", one()), ("e6", rat(-1, 1))]], Stabilizer, "7", &algebras);
        add("h_sec7_d", "B4", vec![vec![("e2", one())], vec![("e3", one()), ("e4", one())], vec![("e1", one()), ("e6", rat(-1, 1))]], Stabilizer, "7", &algebras);
        add("h_sec7_e", "B4", vec![vec![("e2", one())], vec![("e3", one())], vec![("e4", one())]], Stabilizer, "7", &algebras);
        add("h_sec7_f", "B4", vec![vec![("e4", one())], vec![("e5", one())], vec![("e6", one())]], Stabilizer, "7", &algebras);

        // case 7 ambient algebra's triple system
        add("m_7", "case7", vec![vec![("e1", one())], vec![("e2", one())], vec![("e3", one())]], TripleSystem, "7", &algebras);

        // product case: m = {(X, -X)}, stabilizers h1 diagonal, h2 triangular type
        add("m_prod", "prod_sl2",
            vec![vec![("H1", one()), ("H2", rat(-1, 1))], vec![("T1", one()), ("T2", rat(-1, 1))], vec![("U1", one()), ("U2", rat(-1, 1))]],
            TripleSystem, "4", &algebras);
        add("h1_prod", "prod_sl2",
            vec![vec![("H1", one()), ("H2", one())], vec![("T1", one()), ("T2", one())], vec![("U1", one()), ("U2", one())]],
            Stabilizer, "4", &algebras);
        add("h2_prod", "prod_sl2",
            vec![vec![("H1", one()), ("H2", one())], vec![("U1", one()), ("T1", one())], vec![("U2", one()), ("T2", one())]],
            Stabilizer, "4", &algebras);

        Catalog {
            algebras,
            subspaces,
            sections,
        }
    }

    pub fn get_algebra(&self, id: &str) -> Result<&LieAlgebraDef<Rat>> {
        self.algebras
            .get(id)
            .ok_or_else(|| Error::UnknownId(id.into()))
    }

    pub fn get_subspace(&self, id: &str) -> Result<&Subspace<Rat>> {
        self.subspaces
            .get(id)
            .map(|(_, s, _, _)| s)
            .ok_or_else(|| Error::UnknownId(id.into()))
    }

    pub fn subspace_algebra(&self, id: &str) -> Result<&LieAlgebraDef<Rat>> {
        let (alg_id, _, _, _) = self
            .subspaces
            .get(id)
            .ok_or_else(|| Error::UnknownId(id.into()))?;
        self.get_algebra(alg_id)
    }

    pub fn list(&self) -> Vec<EntryInfo> {
        let mut out: Vec<EntryInfo> = self
            .algebras
            .keys()
            .map(|id| EntryInfo {
                id: id.clone(),
                kind: EntryKind::Algebra,
                paper_section: self.sections.get(id).cloned().unwrap_or_default(),
            })
            .collect();
        for (id, (_, _, kind, section)) in &self.subspaces {
            out.push(EntryInfo {
                id: id.clone(),
                kind: *kind,
                paper_section: section.clone(),
            });
        }
        for (id, section) in [("m_a", "4"), ("m_d", "4"), ("m_b3c3c2", "7")] {
            out.push(EntryInfo {
                id: id.into(),
                kind: EntryKind::BolFamily,
                paper_section: section.into(),
            });
        }
        for (id, section) in [("B3_matrices", "3-B3"), ("B4_pairs", "3-B4")] {
            out.push(EntryInfo {
                id: id.into(),
                kind: EntryKind::MatrixRep,
                paper_section: section.into(),
            });
        }
        out
    }

    /// Evaluates a parametrized Bol-complement family member.
    pub fn bol_family(&self, id: &str, params: &FamilyParams) -> Result<Subspace<Rat>> {
        match id {
            "m_a" => {
                let a = params
                    .get("a")
                    .ok_or_else(|| Error::Domain("m_a needs parameter a".into()))?;
                if a == &rat(1, 1) || a == &rat(-1, 1) {
                    return Err(Error::Domain("m_a requires a outside {1, -1}".into()));
                }
                let alg = self.get_algebra("B1")?;
                Subspace::span(
                    alg,
                    &[
                        alg.combo(&[("T", rat(1, 1)), ("U", a.clone())])?,
                        alg.combo(&[("iU", rat(1, 1)), ("iT", a.clone())])?,
                        alg.labeled("H")?,
                    ],
                )
            }
            "m_d" => {
                let d = params
                    .get("d")
                    .ok_or_else(|| Error::Domain("m_d needs parameter d".into()))?;
                if d.numer() == &num_bigint::BigInt::from(0) {
                    return Err(Error::Domain("m_d requires d != 0".into()));
                }
                let alg = self.get_algebra("B1")?;
                Subspace::span(
                    alg,
                    &[
                        alg.combo(&[("U", rat(1, 1)), ("T", rat(1, 1))])?,
                        alg.combo(&[("iH", d.clone()), ("iU", rat(1, 1)), ("iT", rat(1, 1))])?,
                        alg.combo(&[("H", rat(1, 1)), ("U", d.clone())])?,
                    ],
                )
            }
            "m_b3c3c2" => {
                let b3 = params
                    .get("b3")
                    .ok_or_else(|| Error::Domain("m_b3c3c2 needs b3".into()))?;
                let c3 = params
                    .get("c3")
                    .ok_or_else(|| Error::Domain("m_b3c3c2 needs c3".into()))?;
                let c2 = params
                    .get("c2")
                    .ok_or_else(|| Error::Domain("m_b3c3c2 needs c2".into()))?;
                if b3.clone() * b3.clone() + c3.clone() * c3.clone() == rat(1, 1) {
                    return Err(Error::Domain(
                        "m_b3c3c2 requires b3^2 + c3^2 != 1".into(),
                    ));
                }
                self.bcc_subspace(b3, c3, c2)
            }
            _ => Err(Error::UnknownId(id.into())),
        }
    }

    pub fn bcc_subspace(&self, b3: &Rat, c3: &Rat, c2: &Rat) -> Result<Subspace<Rat>> {
        let alg = self.get_algebra("B4")?;
        Subspace::span(
            alg,
            &[
                alg.combo(&[("e1", rat(1, 1)), ("e6", -c3.clone()), ("e5", b3.clone())])?,
                alg.combo(&[("e2", rat(1, 1)), ("e6", c2.clone()), ("e4", b3.clone())])?,
                alg.combo(&[("e3", rat(1, 1)), ("e5", c2.clone()), ("e4", c3.clone())])?,
            ],
        )
    }

    /// The stabilizer each Bol family complements.
    pub fn family_stabilizer(&self, id: &str) -> Result<&Subspace<Rat>> {
        match id {
            "m_a" | "m_d" => self.get_subspace("h_4.1"),
            "m_b3c3c2" => self.get_subspace("h_sec7_f"),
            _ => Err(Error::UnknownId(id.into())),
        }
    }

    /// Full load-time validation: Jacobi for every algebra, the two Killing
    /// normalization cross-checks, triple-system closure for every stored
    /// system, subalgebra + no-nonzero-ideal for every stabilizer, sampled
    /// membership for every family, and regeneration of the B3/B4 tables
    /// from their matrix representations.
    pub fn validate(&self) -> Result<Vec<VerificationReport>> {
        let mut out = Vec::new();

        for (id, alg) in &self.algebras {
            let mut r = alg.check_jacobi();
            r.context = id.clone();
            r.paper_section = self.sections.get(id).cloned().unwrap_or_default();
            out.push(r);
        }

        out.push(self.check_b1_killing()?);
        out.push(self.check_b4_killing()?);
        out.push(self.check_b3_regeneration()?);
        out.push(self.check_b4_pairs()?);

        for (id, (alg_id, s, kind, section)) in &self.subspaces {
            let alg = self.get_algebra(alg_id)?;
            match kind {
                EntryKind::TripleSystem => {
                    let mut r = is_lie_triple_system(alg, s)?;
                    r.context = id.clone();
                    r.paper_section = section.clone();
                    out.push(r);
                }
                EntryKind::Stabilizer => {
                    let ok = is_subalgebra(alg, s)? && !contains_nonzero_ideal(alg, s)?;
                    out.push(VerificationReport::exact(
                        id,
                        "stabilizer_subalgebra_no_ideal",
                        section,
                        ok,
                    ));
                }
                _ => {}
            }
        }

        // five sample points per family
        for (fam, pts) in [
            ("m_a", vec![rat(0, 1), rat(1, 2), rat(-1, 2), rat(1, 4), rat(2, 1)]),
            ("m_d", vec![rat(1, 2), rat(-1, 2), rat(1, 1), rat(2, 1), rat(-3, 1)]),
        ] {
            let pname = if fam == "m_a" { "a" } else { "d" };
            let h = self.family_stabilizer(fam)?.clone();
            let alg = self.get_algebra("B1")?;
            let mut ok = true;
            for p in pts {
                let m = self.bol_family(fam, &FamilyParams(vec![(pname.into(), p)]))?;
                ok &= is_bol_complement(alg, &m, &h)?;
            }
            out.push(VerificationReport::exact(fam, "family_membership", "4", ok));
        }
        {
            let alg = self.get_algebra("B4")?;
            let h = self.get_subspace("h_sec7_f")?.clone();
            let mut ok = true;
            for (b3, c3, c2) in [
                (rat(0, 1), rat(0, 1), rat(0, 1)),
                (rat(1, 2), rat(0, 1), rat(0, 1)),
                (rat(1, 3), rat(1, 3), rat(2, 1)),
                (rat(-1, 2), rat(1, 4), rat(-1, 1)),
                (rat(2, 1), rat(0, 1), rat(3, 1)),
            ] {
                let m = self.bol_family(
                    "m_b3c3c2",
                    &FamilyParams(vec![
                        ("b3".into(), b3),
                        ("c3".into(), c3),
                        ("c2".into(), c2),
                    ]),
                )?;
                ok &= is_bol_complement(alg, &m, &h)?;
            }
            out.push(VerificationReport::exact(
                "m_b3c3c2",
                "family_membership",
                "7",
                ok,
            ));
        }

        if out.iter().all(|r| r.pass) {
            Ok(out)
        } else {
            let failed: Vec<String> = out
                .iter()
                .filter(|r| !r.pass)
                .map(|r| format!("{}:{}", r.context, r.check))
                .collect();
            Err(Error::Precondition(format!(
                "catalog validation failed: {}",
                failed.join(", ")
            )))
        }
    }

    /// Basis orthonormality of B1 under the normalized real Killing form,
    /// and agreement of the ad-trace form with the coordinate formula
    /// (+,+,-,-,-,+) in the (H, T, U, iH, iT, iU) order.
    fn check_b1_killing(&self) -> Result<VerificationReport> {
        let alg = self.get_algebra("B1")?;
        let signs = [1i64, 1, -1, -1, -1, 1];
        let gram = alg.killing_gram()?;
        let mut ok = true;
        for i in 0..6 {
            for j in 0..6 {
                let expect = if i == j { rat(signs[i], 1) } else { rat(0, 1) };
                if gram.at(i, j) != &expect {
                    ok = false;
                }
            }
        }
        Ok(VerificationReport::exact(
            "B1",
            "killing_orthonormal_signature",
            "3-K1",
            ok,
        ))
    }

    /// Killing diagonal of B4: (0, 1, 1, -1, 0, 0) and zero off-diagonal.
    fn check_b4_killing(&self) -> Result<VerificationReport> {
        let alg = self.get_algebra("B4")?;
        let diag = [0i64, 1, 1, -1, 0, 0];
        let gram = alg.killing_gram()?;
        let mut ok = true;
        for i in 0..6 {
            for j in 0..6 {
                let expect = if i == j { rat(diag[i], 1) } else { rat(0, 1) };
                if gram.at(i, j) != &expect {
                    ok = false;
                }
            }
        }
        Ok(VerificationReport::exact("B4", "killing_k2", "3-K2", ok))
    }

    fn check_b3_regeneration(&self) -> Result<VerificationReport> {
        let derived = derive_structure_constants(
            "B3_derived",
            &["e1", "e2", "e3", "e4", "e5", "e6"],
            &b3_matrices(),
            rat(1, 4),
        )?;
        let stored = self.get_algebra("B3")?;
        Ok(VerificationReport::exact(
            "B3",
            "matrix_rep_regeneration",
            "3-B3",
            same_structure(&derived, stored),
        ))
    }

    fn check_b4_pairs(&self) -> Result<VerificationReport> {
        let derived = derive_structure_constants_pairs(
            "B4_derived",
            &["e1", "e2", "e3", "e4", "e5", "e6"],
            &b4_pairs(),
            rat(1, 4),
        )?;
        let stored = self.get_algebra("B4")?;
        Ok(VerificationReport::exact(
            "B4",
            "pair_rep_regeneration",
            "3-B4",
            same_structure(&derived, stored),
        ))
    }

    /// Exports one algebra to the JSON wire schema.
    pub fn export_algebra(&self, id: &str) -> Result<AlgebraJson> {
        Ok(AlgebraJson::from_def(self.get_algebra(id)?))
    }

    /// Loads extra algebras from a JSON file (array of algebra objects);
    /// every entry must pass the Jacobi check.
    pub fn load_custom(&mut self, json: &str) -> Result<Vec<String>> {
        let entries: Vec<AlgebraJson> =
            serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let mut ids = Vec::new();
        for e in entries {
            let alg = e.to_def()?;
            let rep = alg.check_jacobi();
            if !rep.pass {
                return Err(Error::Precondition(format!(
                    "custom algebra {} fails the Jacobi check",
                    alg.name
                )));
            }
            ids.push(alg.name.clone());
            self.sections.insert(alg.name.clone(), "custom".into());
            self.algebras.insert(alg.name.clone(), alg);
        }
        Ok(ids)
    }
}

fn same_structure(a: &LieAlgebraDef<Rat>, b: &LieAlgebraDef<Rat>) -> bool {
    if a.dim != b.dim {
        return false;
    }
    for i in 0..a.dim {
        for j in i + 1..a.dim {
            let ea = a
                .structure
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| vec![rat(0, 1); a.dim]);
            let eb = b
                .structure
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| vec![rat(0, 1); b.dim]);
            if ea != eb {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// JSON wire schema
// ---------------------------------------------------------------------------

/// Wire form of an algebra: rationals as "p/q" strings, brackets keyed by
/// "i,j" with 0-based i < j.
#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: BTreeMap<String, Vec<String>>,
    pub killing_normalization: String,
}

impl AlgebraJson {
    pub fn from_def(alg: &LieAlgebraDef<Rat>) -> Self {
        let mut brackets = BTreeMap::new();
        for ((i, j), v) in &alg.structure {
            if v.iter().all(|c| c == &rat(0, 1)) {
                continue;
            }
            brackets.insert(
                format!("{i},{j}"),
                v.iter().map(format_rational).collect(),
            );
        }
        AlgebraJson {
            name: alg.name.clone(),
            dim: alg.dim,
            basis: alg.basis_labels.clone(),
            brackets,
            killing_normalization: format_rational(&alg.killing_normalization),
        }
    }

    pub fn to_def(&self) -> Result<LieAlgebraDef<Rat>> {
        if self.basis.len() != self.dim {
            return Err(Error::Parse(format!(
                "{}: basis has {} labels for dim {}",
                self.name,
                self.basis.len(),
                self.dim
            )));
        }
        let norm = parse_rational(&self.killing_normalization)?;
        if norm <= rat(0, 1) {
            return Err(Error::Parse(format!(
                "{}: killing_normalization must be positive",
                self.name
            )));
        }
        let mut structure = BTreeMap::new();
        for (key, coords) in &self.brackets {
            let (i, j) = key
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad bracket key `{key}`")))?;
            let i: usize = i
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad bracket key `{key}`")))?;
            let j: usize = j
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad bracket key `{key}`")))?;
            if i >= j || j >= self.dim {
                return Err(Error::Parse(format!(
                    "bracket key `{key}` must satisfy i < j < dim"
                )));
            }
            if coords.len() != self.dim {
                return Err(Error::Parse(format!(
                    "bracket `{key}` has {} coordinates for dim {}",
                    coords.len(),
                    self.dim
                )));
            }
            let v: Result<Vec<Rat>> = coords.iter().map(|s| parse_rational(s)).collect();
            structure.insert((i, j), v?);
        }
        let labels: Vec<&str> = self.basis.iter().map(|s| s.as_str()).collect();
        let mut def = LieAlgebraDef::new(&self.name, &labels, vec![], norm);
        def.structure = structure;
        Ok(def)
    }
}

// ---------------------------------------------------------------------------
// Built-in algebra tables
// ---------------------------------------------------------------------------

/// Real 6-dimensional form of sl2(C); H, T, U are the standard 2x2
/// matrices with [H,T]=2U, [H,U]=2T, [U,T]=2H. Normalization makes the
/// basis orthonormal under the real Killing form.
pub fn b1() -> LieAlgebraDef<Rat> {
    let c = |k: usize, v: i64| (k, rat(v, 1));
    LieAlgebraDef::new(
        "B1",
        &["H", "T", "U", "iH", "iT", "iU"],
        vec![
            ((0, 1), vec![c(2, 2)]),
            ((0, 2), vec![c(1, 2)]),
            ((0, 4), vec![c(5, 2)]),
            ((0, 5), vec![c(4, 2)]),
            ((1, 2), vec![c(0, -2)]),
            ((1, 3), vec![c(5, -2)]),
            ((1, 5), vec![c(3, -2)]),
            ((2, 3), vec![c(4, -2)]),
            ((2, 4), vec![c(3, 2)]),
            ((3, 4), vec![c(2, -2)]),
            ((3, 5), vec![c(1, -2)]),
            ((4, 5), vec![c(0, 2)]),
        ],
        rat(1, 16),
    )
}

/// sl2(R) + R with central e1.
pub fn b2() -> LieAlgebraDef<Rat> {
    let c = |k: usize, v: i64| (k, rat(v, 1));
    LieAlgebraDef::new(
        "B2",
        &["e1", "e2", "e3", "e4"],
        vec![
            ((1, 2), vec![c(3, 1)]),
            ((1, 3), vec![c(2, 1)]),
            ((2, 3), vec![c(1, -1)]),
        ],
        rat(1, 2),
    )
}

/// so3(R) ⋉ R^3 (euclidean motions), frozen from the 4x4 matrix basis.
pub fn b3() -> LieAlgebraDef<Rat> {
    let c = |k: usize, v: i64| (k, rat(v, 1));
    LieAlgebraDef::new(
        "B3",
        &["e1", "e2", "e3", "e4", "e5", "e6"],
        vec![
            ((0, 1), vec![c(5, 1)]),
            ((0, 2), vec![c(4, 1)]),
            ((1, 2), vec![c(3, 1)]),
            ((1, 3), vec![c(2, -1)]),
            ((1, 5), vec![c(0, 1)]),
            ((2, 3), vec![c(1, 1)]),
            ((2, 4), vec![c(0, 1)]),
            ((3, 4), vec![c(5, -1)]),
            ((3, 5), vec![c(4, 1)]),
        ],
        rat(1, 4),
    )
}

/// sl2(R) ⋉ R^3 (adjoint action), frozen from the pair representation.
pub fn b4() -> LieAlgebraDef<Rat> {
    let c = |k: usize, v: i64| (k, rat(v, 1));
    LieAlgebraDef::new(
        "B4",
        &["e1", "e2", "e3", "e4", "e5", "e6"],
        vec![
            ((0, 1), vec![c(5, 1)]),
            ((0, 2), vec![c(4, 1)]),
            ((1, 2), vec![c(3, 1)]),
            ((1, 3), vec![c(2, 1)]),
            ((1, 5), vec![c(0, -1)]),
            ((2, 3), vec![c(1, -1)]),
            ((2, 4), vec![c(0, -1)]),
            ((3, 4), vec![c(5, 1)]),
            ((3, 5), vec![c(4, -1)]),
        ],
        rat(1, 4),
    )
}

/// so3(R) + R with central e1.
pub fn case51() -> LieAlgebraDef<Rat> {
    let c = |k: usize, v: i64| (k, rat(v, 1));
    LieAlgebraDef::new(
        "case5.1",
        &["e1", "e2", "e3", "e4"],
        vec![
            ((1, 2), vec![c(3, 1)]),
            ((1, 3), vec![c(2, -1)]),
            ((2, 3), vec![c(1, 1)]),
        ],
        rat(1, 2),
    )
}

/// sl2(R) ⋉ R^2 (natural action). e2 = H/2, e3 = U/2, e4 = T/2 in the 2x2
/// picture; e1 = (1,-1) and e5 = (1,1) span the translation plane. The
/// translation generators complete the partially given table so that all
/// seven ternary relations hold; Jacobi is validated, not assumed.
pub fn case7() -> LieAlgebraDef<Rat> {
    LieAlgebraDef::new(
        "case7",
        &["e1", "e2", "e3", "e4", "e5"],
        vec![
            ((0, 1), vec![(4, rat(-1, 2))]),
            ((0, 2), vec![(4, rat(1, 2))]),
            ((0, 3), vec![(0, rat(1, 2))]),
            ((1, 2), vec![(3, rat(1, 1))]),
            ((1, 3), vec![(2, rat(1, 1))]),
            ((1, 4), vec![(0, rat(1, 2))]),
            ((2, 3), vec![(1, rat(1, 1))]),
            ((2, 4), vec![(0, rat(1, 2))]),
            ((3, 4), vec![(4, rat(1, 2))]),
        ],
        rat(2, 5),
    )
}

/// sl2(R) + sl2(R), componentwise B1-type brackets.
pub fn prod_sl2() -> LieAlgebraDef<Rat> {
    let c = |k: usize, v: i64| (k, rat(v, 1));
    LieAlgebraDef::new(
        "prod_sl2",
        &["H1", "T1", "U1", "H2", "T2", "U2"],
        vec![
            ((0, 1), vec![c(2, 2)]),
            ((0, 2), vec![c(1, 2)]),
            ((1, 2), vec![c(0, -2)]),
            ((3, 4), vec![c(5, 2)]),
            ((3, 5), vec![c(4, 2)]),
            ((4, 5), vec![c(3, -2)]),
        ],
        rat(1, 8),
    )
}

// ---------------------------------------------------------------------------
// Matrix representations and structure-constant derivation
// ---------------------------------------------------------------------------

fn mat4(entries: &[(usize, usize, i64)]) -> Mat<Rat> {
    let mut m = Mat::zeros(4, 4);
    for &(r, c, v) in entries {
        *m.at_mut(r, c) = rat(v, 1);
    }
    m
}

/// The 4x4 basis matrices of the euclidean-motion algebra.
pub fn b3_matrices() -> Vec<Mat<Rat>> {
    vec![
        mat4(&[(0, 2, -1)]),
        mat4(&[(2, 3, -1), (3, 2, 1)]),
        mat4(&[(1, 2, 1), (2, 1, -1)]),
        mat4(&[(1, 3, 1), (3, 1, -1)]),
        mat4(&[(0, 1, 1)]),
        mat4(&[(0, 3, 1)]),
    ]
}

/// Pair (A, X) with the semidirect bracket
/// [(A1,X1),(A2,X2)] = ([A1,A2], [A1,X2] + [X1,A2]).
#[derive(Debug, Clone)]
pub struct MatPair {
    pub a: Mat<Rat>,
    pub x: Mat<Rat>,
}

fn comm(a: &Mat<Rat>, b: &Mat<Rat>) -> Mat<Rat> {
    a.mul(b).sub(&b.mul(a))
}

fn pair_bracket(p: &MatPair, q: &MatPair) -> MatPair {
    let a = comm(&p.a, &q.a);
    let x = comm(&p.a, &q.x).sub(&comm(&q.a, &p.x));
    MatPair { a, x }
}

fn mat2(entries: [i64; 4], den: i64) -> Mat<Rat> {
    Mat::from_rows(vec![
        vec![rat(entries[0], den), rat(entries[1], den)],
        vec![rat(entries[2], den), rat(entries[3], den)],
    ])
}

/// Pair basis of the pseudo-euclidean motion algebra: (0,-U/2), (H/2,0),
/// (T/2,0), (U/2,0), (0,-H/2), (0,T/2). The 1/2 scale makes the bracket
/// table integral.
pub fn b4_pairs() -> Vec<MatPair> {
    let h = |d| mat2([1, 0, 0, -1], d);
    let t = |d| mat2([0, 1, 1, 0], d);
    let u = |d| mat2([0, 1, -1, 0], d);
    let z = || mat2([0, 0, 0, 0], 1);
    vec![
        MatPair { a: z(), x: u(-2) },
        MatPair { a: h(2), x: z() },
        MatPair { a: t(2), x: z() },
        MatPair { a: u(2), x: z() },
        MatPair { a: z(), x: h(-2) },
        MatPair { a: z(), x: t(2) },
    ]
}

fn flatten(m: &Mat<Rat>) -> Vec<Rat> {
    m.data.clone()
}

fn express_in_span(basis_flat: &[Vec<Rat>], target: &[Rat]) -> Result<Vec<Rat>> {
    let n = target.len();
    let k = basis_flat.len();
    let mut a = Mat::zeros(n, k);
    for (j, b) in basis_flat.iter().enumerate() {
        for i in 0..n {
            *a.at_mut(i, j) = b[i].clone();
        }
    }
    a.solve(target)
        .ok_or_else(|| Error::Representation("commutator is outside the span".into()))
}

/// Structure constants of a span of square matrices closed under the
/// commutator, expressed in the given basis.
pub fn derive_structure_constants(
    name: &str,
    labels: &[&str],
    mats: &[Mat<Rat>],
    killing_normalization: Rat,
) -> Result<LieAlgebraDef<Rat>> {
    let flats: Vec<Vec<Rat>> = mats.iter().map(flatten).collect();
    let mut brackets = Vec::new();
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            let c = comm(&mats[i], &mats[j]);
            let coords = express_in_span(&flats, &flatten(&c))?;
            let terms: Vec<(usize, Rat)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, v)| v != &rat(0, 1))
                .collect();
            brackets.push(((i, j), terms));
        }
    }
    Ok(LieAlgebraDef::new(name, labels, brackets, killing_normalization))
}

/// Same derivation for pair representations under the semidirect bracket.
pub fn derive_structure_constants_pairs(
    name: &str,
    labels: &[&str],
    pairs: &[MatPair],
    killing_normalization: Rat,
) -> Result<LieAlgebraDef<Rat>> {
    let flats: Vec<Vec<Rat>> = pairs
        .iter()
        .map(|p| {
            let mut v = flatten(&p.a);
            v.extend(flatten(&p.x));
            v
        })
        .collect();
    let mut brackets = Vec::new();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let c = pair_bracket(&pairs[i], &pairs[j]);
            let mut target = flatten(&c.a);
            target.extend(flatten(&c.x));
            let coords = express_in_span(&flats, &target)?;
            let terms: Vec<(usize, Rat)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, v)| v != &rat(0, 1))
                .collect();
            brackets.push(((i, j), terms));
        }
    }
    Ok(LieAlgebraDef::new(name, labels, brackets, killing_normalization))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::derived_space;
    use num_traits::Zero;

    #[test]
    fn builtin_catalog_validates() {
        let cat = Catalog::builtin();
        let reports = cat.validate().expect("catalog must validate");
        assert!(reports.iter().all(|r| r.pass));
    }

    #[test]
    fn b1_bracket_table_spot_checks() {
        let alg = b1();
        let h = alg.labeled("H").unwrap();
        let t = alg.labeled("T").unwrap();
        let two_u = alg.combo(&[("U", rat(2, 1))]).unwrap();
        assert_eq!(alg.bracket(&h, &t).unwrap(), two_u);
        // antisymmetry: [x, x] = 0
        assert!(alg.bracket(&t, &t).unwrap().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn b4_bracket_spot_checks() {
        let alg = b4();
        let e2 = alg.labeled("e2").unwrap();
        let e6 = alg.labeled("e6").unwrap();
        let minus_e1 = alg.combo(&[("e1", rat(-1, 1))]).unwrap();
        assert_eq!(alg.bracket(&e2, &e6).unwrap(), minus_e1);
        // [[e1, e2], e2] = e1
        let e1 = alg.labeled("e1").unwrap();
        assert_eq!(alg.triple(&e1, &e2, &e2).unwrap(), e1);
    }

    #[test]
    fn corrupted_b1_fails_jacobi() {
        let mut alg = b1();
        // replace [H, T] = 2U by 3U
        alg.structure.insert((0, 1), alg.combo(&[("U", rat(3, 1))]).unwrap());
        assert!(!alg.check_jacobi().pass);
    }

    #[test]
    fn case7_triple_relations() {
        let alg = case7();
        let e1 = alg.labeled("e1").unwrap();
        let e2 = alg.labeled("e2").unwrap();
        let e3 = alg.labeled("e3").unwrap();
        let q = |v: &[Rat], c: Rat| -> Vec<Rat> {
            v.iter().map(|x| x.clone() * c.clone()).collect()
        };
        assert_eq!(alg.triple(&e1, &e2, &e2).unwrap(), q(&e1, rat(1, 4)));
        assert_eq!(alg.triple(&e1, &e3, &e3).unwrap(), q(&e1, rat(-1, 4)));
        assert_eq!(alg.triple(&e1, &e2, &e3).unwrap(), q(&e1, rat(1, 4)));
        assert_eq!(alg.triple(&e1, &e3, &e2).unwrap(), q(&e1, rat(-1, 4)));
        assert_eq!(alg.triple(&e2, &e3, &e1).unwrap(), q(&e1, rat(-1, 2)));
        // e2, e3, e4 = [e2,e3]: hyperbolic, elliptic, hyperbolic
        let e4 = alg.labeled("e4").unwrap();
        assert_eq!(alg.bracket(&e2, &e3).unwrap(), e4);
        assert!(alg.killing(&e2, &e2).unwrap() > rat(0, 1));
        assert!(alg.killing(&e3, &e3).unwrap() < rat(0, 1));
        assert!(alg.killing(&e4, &e4).unwrap() > rat(0, 1));
    }

    #[test]
    fn family_domain_errors() {
        let cat = Catalog::builtin();
        assert!(cat
            .bol_family("m_a", &FamilyParams(vec![("a".into(), rat(1, 1))]))
            .is_err());
        assert!(cat
            .bol_family("m_d", &FamilyParams(vec![("d".into(), rat(0, 1))]))
            .is_err());
        assert!(cat
            .bol_family(
                "m_b3c3c2",
                &FamilyParams(vec![
                    ("b3".into(), rat(3, 5)),
                    ("c3".into(), rat(4, 5)),
                    ("c2".into(), rat(0, 1)),
                ]),
            )
            .is_err());
    }

    #[test]
    fn family_reduces_to_named_subspaces() {
        let cat = Catalog::builtin();
        let m0 = cat
            .bol_family("m_a", &FamilyParams(vec![("a".into(), rat(0, 1))]))
            .unwrap();
        assert!(m0.equals(cat.get_subspace("m_4.1").unwrap()));
        let m000 = cat
            .bol_family(
                "m_b3c3c2",
                &FamilyParams(vec![
                    ("b3".into(), rat(0, 1)),
                    ("c3".into(), rat(0, 1)),
                    ("c2".into(), rat(0, 1)),
                ]),
            )
            .unwrap();
        assert!(m000.equals(cat.get_subspace("m_6.3").unwrap()));
    }

    #[test]
    fn derived_space_of_m_a_matches_table() {
        let cat = Catalog::builtin();
        let alg = cat.get_algebra("B1").unwrap();
        for a in [rat(1, 2), rat(1, 4), rat(-2, 3)] {
            let m = cat
                .bol_family("m_a", &FamilyParams(vec![("a".into(), a.clone())]))
                .unwrap();
            let der = derived_space(alg, &m).unwrap();
            let expect = Subspace::span(
                alg,
                &[
                    alg.labeled("iH").unwrap(),
                    alg.combo(&[("U", rat(1, 1)), ("T", a.clone())]).unwrap(),
                    alg.combo(&[("iT", rat(1, 1)), ("iU", a.clone())]).unwrap(),
                ],
            )
            .unwrap();
            assert!(der.equals(&expect));
        }
    }

    #[test]
    fn derived_space_of_bcc_matches_generators() {
        let cat = Catalog::builtin();
        let alg = cat.get_algebra("B4").unwrap();
        for (b3, c3, c2) in [
            (rat(1, 2), rat(0, 1), rat(0, 1)),
            (rat(1, 3), rat(1, 4), rat(2, 1)),
            (rat(-2, 1), rat(1, 2), rat(-1, 3)),
        ] {
            let m = cat.bcc_subspace(&b3, &c3, &c2).unwrap();
            let der = derived_space(alg, &m).unwrap();
            let one = rat(1, 1);
            let d1 = alg
                .combo(&[
                    ("e6", one.clone() - b3.clone() * b3.clone()),
                    ("e1", rat(0, 1) - c3.clone()),
                    ("e5", rat(0, 1) - c3.clone() * b3.clone()),
                ])
                .unwrap();
            let d2 = alg
                .combo(&[
                    ("e5", one.clone() - c3.clone() * c3.clone()),
                    ("e1", b3.clone()),
                    ("e6", rat(0, 1) - c3.clone() * b3.clone()),
                ])
                .unwrap();
            let d3 = alg
                .combo(&[
                    ("e4", one),
                    ("e3", c3.clone()),
                    ("e2", b3.clone()),
                    ("e5", c2.clone() * c3.clone()),
                    ("e6", b3.clone() * c2.clone()),
                ])
                .unwrap();
            let expect = Subspace::span(alg, &[d1, d2, d3.clone()]).unwrap();
            assert!(der.equals(&expect), "({b3},{c3},{c2})");
            // the rotation generator is timelike exactly inside the disc
            let k = alg.killing(&d3, &d3).unwrap();
            let inside = b3.clone() * b3.clone() + c3.clone() * c3.clone() < rat(1, 1);
            assert_eq!(k < rat(0, 1), inside, "({b3},{c3},{c2})");
        }
    }

    #[test]
    fn b2_center_is_e1() {
        let alg = b2();
        let c = crate::lie::center(&alg).unwrap();
        assert_eq!(c.rank(), 1);
        assert!(c.contains(&alg.labeled("e1").unwrap()));
    }

    #[test]
    fn intersection_tables_prod_case() {
        let cat = Catalog::builtin();
        let alg = cat.get_algebra("prod_sl2").unwrap();
        let m = cat.get_subspace("m_prod").unwrap();
        let h1 = cat.get_subspace("h1_prod").unwrap();
        let h2 = cat.get_subspace("h2_prod").unwrap();
        assert!(m.intersect(h1).unwrap().is_zero());
        let i2 = m.intersect(h2).unwrap();
        let expect = Subspace::span(
            alg,
            &[alg
                .combo(&[
                    ("U1", rat(1, 1)),
                    ("T1", rat(1, 1)),
                    ("U2", rat(-1, 1)),
                    ("T2", rat(-1, 1)),
                ])
                .unwrap()],
        )
        .unwrap();
        assert!(i2.equals(&expect));
    }

    #[test]
    fn json_roundtrip() {
        let cat = Catalog::builtin();
        let j = cat.export_algebra("B4").unwrap();
        let s = serde_json::to_string(&j).unwrap();
        let back: AlgebraJson = serde_json::from_str(&s).unwrap();
        let def = back.to_def().unwrap();
        assert!(same_structure(&def, cat.get_algebra("B4").unwrap()));
        assert!(def.check_jacobi().pass);
    }

    #[test]
    fn unknown_ids_error() {
        let cat = Catalog::builtin();
        assert!(cat.get_algebra("nope").is_err());
        assert!(cat.get_subspace("nope").is_err());
        assert!(cat.bol_family("nope", &FamilyParams(vec![])).is_err());
    }

    #[test]
    fn single_zero_matrix_is_abelian() {
        let m = Mat::zeros(2, 2);
        let alg = derive_structure_constants("triv", &["z"], &[m], rat(1, 1)).unwrap();
        assert_eq!(alg.dim, 1);
        assert!(alg.check_jacobi().pass);
    }

    #[test]
    fn commutator_outside_span_is_rejected() {
        // H and T alone: [H, T] = 2U is not in their span
        let h = mat2([1, 0, 0, -1], 1);
        let t = mat2([0, 1, 1, 0], 1);
        let err = derive_structure_constants("bad", &["h", "t"], &[h, t], rat(1, 1));
        assert!(matches!(err, Err(crate::Error::Representation(_))));
    }
}
