//! Linear encodings of the local lemmas and the adjunction lemmas.
//!
//! Each lemma is a list of cases. A case is the lemma's hypotheses plus the
//! inequalities that hold in one branch of the argument once the pair is
//! assumed not log canonical; the lemma holds iff every case is infeasible.
//!
//! Variables:
//!
//! | name | meaning |
//! |------|---------|
//! | `x` | the free parameter, `0 <= x <= 1` |
//! | `a`, `b` | coefficients of the curves through `P` |
//! | `m`, `mt`, `mh` | `mult_P(D)`, then the multiplicities of the strict transforms after one and two blow-ups |
//! | `T`, `Tc`, `Tz` | local intersections `(D·C)_P`, `(D·Z)_P` |
//! | `Tt`, `Th`, `Tb` | local intersections of the strict transforms on the first, second and third blow-up |
//! | `U`, `V`, `W` | local intersections with exceptional curves at the point where lc fails |
//! | `aP`, `aQ`, `aO`, `bP`, `bQ` | a coefficient times the multiplicity of its curve at the named point |
//!
//! The strict inequalities are the adjunction bound `(D'·E)_O > 1 - c` for a
//! pair `D' + cE` that is not lc at `O`, with `c` the exceptional coefficient.

use std::sync::OnceLock;

use crate::error::ProverError;
use crate::rational::Q;

use super::{check_certificate, prove_infeasible, FarkasCertificate, LinearSystem, ProofOutcome};

/// `(constraint, tag override, note)`. An empty tag keeps the default.
type Line = (&'static str, &'static str, &'static str);

struct CaseDef {
    name: &'static str,
    lines: &'static [Line],
}

struct LemmaDef {
    id: &'static str,
    title: &'static str,
    variables: &'static [&'static str],
    hypotheses: &'static [Line],
    cases: &'static [CaseDef],
    probes: &'static [&'static str],
}

const LOCAL_1: LemmaDef = LemmaDef {
    id: "local-1",
    title: "node or cusp with a <= x/2 and (D·C)_P <= 4/3 + x/6 - a",
    variables: &["x", "a", "m", "T", "Tt"],
    hypotheses: &[
        ("a <= x/2", "", "hypothesis"),
        ("T <= 4/3 + x/6 - a", "", "hypothesis"),
        ("2m <= T", "", "mult_P(C) = 2"),
    ],
    cases: &[CaseDef {
        name: "Q in C~",
        lines: &[
            ("T >= 2m + Tt", "", "first blow-up"),
            ("Tt > 3 - 4a - 2m", "", "exceptional coefficient 2a + m - 1, (C~·F)_O <= 2"),
        ],
    }],
    probes: &["x<=1"],
};

const LOCAL_2: LemmaDef = LemmaDef {
    id: "local-2",
    title: "node or cusp with a <= lct_P(S,C) - x/2",
    variables: &["x", "a", "m", "mt", "mh", "T", "Th", "Tb"],
    hypotheses: &[("2m <= T", "", "mult_P(C) = 2")],
    cases: &[
        CaseDef {
            name: "O not in F^",
            lines: &[
                ("a <= 1 - x/2", "a<=lct-x/2", "node, lct = 1"),
                ("T <= 1 + x/2 - a", "", "hypothesis"),
                ("T >= 2m + mt + Th", "", "two blow-ups"),
                ("Th > 3 - 3a - m - mt", "", "exceptional coefficient 3a + m + mt - 2"),
            ],
        },
        CaseDef {
            name: "O = G∩F^∩C^",
            lines: &[
                ("a <= 5/6 - x/2", "a<=lct-x/2", "cusp, lct = 5/6"),
                ("T <= 5/6 + x/2 - a", "", "bound used in the cusp branch"),
                ("T >= 2m + mt + mh + Tb", "", "three blow-ups"),
                ("Tb > 5 - 6a - 2m - mt - mh", "", "exceptional coefficient 6a + 2m + mt + mh - 4"),
            ],
        },
    ],
    probes: &["a<=lct-x/2"],
};

const LOCAL_3: LemmaDef = LemmaDef {
    id: "local-3",
    title: "smooth C with a <= 1/3 + x/2 and m + a <= 1 + x/2",
    variables: &["x", "a", "m", "mt", "T", "Th"],
    hypotheses: &[
        ("a <= 1/3 + x/2", "", "hypothesis"),
        ("m + a <= 1 + x/2", "", "hypothesis"),
        ("T <= 1 - x/2 + a", "", "hypothesis"),
        ("m <= T", "", "C smooth at P"),
    ],
    cases: &[CaseDef {
        name: "O in C^",
        lines: &[
            ("T >= m + mt + Th", "", "two blow-ups"),
            ("Th > 3 - 2a - m - mt", "", "exceptional coefficient 2a + m + mt - 2"),
        ],
    }],
    probes: &["a<=1/3+x/2"],
};

const LOCAL_4: LemmaDef = LemmaDef {
    id: "local-4",
    title: "smooth C with a <= 8/9 - x/18 and m + a <= 4/3 + x/6",
    variables: &["x", "a", "m", "mt", "T", "Th"],
    hypotheses: &[
        ("a <= 8/9 - x/18", "", "hypothesis"),
        ("m + a <= 4/3 + x/6", "", "hypothesis"),
        ("T <= x/2 + a", "", "hypothesis"),
        ("m <= T", "", "C smooth at P"),
    ],
    cases: &[CaseDef {
        name: "O in C^",
        lines: &[
            ("T >= m + mt + Th", "", "two blow-ups"),
            ("Th > 3 - 2a - m - mt", "", "exceptional coefficient 2a + m + mt - 2"),
        ],
    }],
    probes: &["a<=8/9-x/18"],
};

const LOCAL_5: LemmaDef = LemmaDef {
    id: "local-5",
    title: "tacnodal Z with a <= (1+x)/3 and (D·Z)_P <= 2 - 2a",
    variables: &["x", "a", "m", "mt", "T", "Th"],
    hypotheses: &[
        ("a <= (1+x)/3", "", "hypothesis"),
        ("T <= 2 - 2a", "", "hypothesis"),
        ("2m <= T", "", "mult_P(Z) = 2"),
        ("T >= 2m + mt + Th", "", "two blow-ups"),
    ],
    cases: &[
        CaseDef { name: "O not in F^", lines: &[("Th > 3 - 3a - m - mt", "", "exceptional coefficient 3a + m + mt - 2")] },
        CaseDef { name: "O = G∩F^∩C^", lines: &[("Th > 4 - 5a - 2m - mt", "", "coefficients of G and F^ both meet O")] },
    ],
    probes: &["a<=(1+x)/3"],
};

const LOCAL_6: LemmaDef = LemmaDef {
    id: "local-6",
    title: "tacnodal Z with a <= 2/3 and (D·Z)_P <= 4/3 + 2x/3 - 2a",
    variables: &["x", "a", "m", "mt", "T", "Th"],
    hypotheses: &[
        ("a <= 2/3", "", "hypothesis"),
        ("T <= 4/3 + 2x/3 - 2a", "", "hypothesis"),
        ("2m <= T", "", "mult_P(Z) = 2"),
        ("T >= 2m + mt + Th", "", "two blow-ups"),
    ],
    cases: &[
        CaseDef { name: "O not in F^", lines: &[("Th > 3 - 3a - m - mt", "", "exceptional coefficient 3a + m + mt - 2")] },
        CaseDef { name: "O = G∩F^∩C^", lines: &[("Th > 4 - 5a - 2m - mt", "", "coefficients of G and F^ both meet O")] },
    ],
    probes: &["a<=2/3"],
};

/// Shared by local-7 and local-8, which differ only in their hypotheses.
const TANGENT_PAIR_CASES: &[CaseDef] = &[
    CaseDef {
        name: "Q in C~, Q not in Z~",
        lines: &[
            ("Tc >= m + U", "", "one blow-up"),
            ("U > 2 - a - b - m", "", "exceptional coefficient a + b + m - 1"),
        ],
    },
    CaseDef {
        name: "Q in Z~, Q not in C~",
        lines: &[
            ("Tz >= m + U", "", "one blow-up"),
            ("U > 2 - a - b - m", "", "exceptional coefficient a + b + m - 1"),
        ],
    },
    CaseDef {
        name: "O in C^",
        lines: &[
            ("Tc >= m + mt + V", "", "two blow-ups"),
            ("V > 3 - 2a - 2b - m - mt", "", "exceptional coefficient 2a + 2b + m + mt - 2"),
        ],
    },
    CaseDef {
        name: "O in Z^",
        lines: &[
            ("Tz >= m + mt + V", "", "two blow-ups"),
            ("V > 3 - 2a - 2b - m - mt", "", "exceptional coefficient 2a + 2b + m + mt - 2"),
        ],
    },
];

const LOCAL_7: LemmaDef = LemmaDef {
    id: "local-7",
    title: "smooth C, Z tangent at P with (C·Z)_P <= 2 and a + b + m <= 1 + x/2",
    variables: &["x", "a", "b", "m", "mt", "Tc", "Tz", "U", "V"],
    hypotheses: &[
        ("a + b + m <= 1 + x/2", "", "hypothesis"),
        ("a <= (1+x)/3", "", "hypothesis"),
        ("b <= (1+x)/3", "", "hypothesis"),
        ("Tc <= 1 + a - 2b", "", "hypothesis"),
        ("Tz <= 1 + b - 2a", "", "hypothesis"),
        ("m <= Tc", "", "C smooth at P"),
        ("m <= Tz", "", "Z smooth at P"),
    ],
    cases: TANGENT_PAIR_CASES,
    probes: &["a<=(1+x)/3"],
};

const LOCAL_8: LemmaDef = LemmaDef {
    id: "local-8",
    title: "smooth C, Z tangent at P with a, b <= 2/3 and a + b + m <= 4/3 + x/6",
    variables: &["x", "a", "b", "m", "mt", "Tc", "Tz", "U", "V"],
    hypotheses: &[
        ("a + b + m <= 4/3 + x/6", "", "hypothesis"),
        ("a <= 2/3", "", "hypothesis"),
        ("b <= 2/3", "", "hypothesis"),
        ("Tc <= (2+x)/3 + a - 2b", "", "hypothesis"),
        ("Tz <= (2+x)/3 + b - 2a", "", "hypothesis"),
        ("m <= Tc", "", "C smooth at P"),
        ("m <= Tz", "", "Z smooth at P"),
    ],
    cases: TANGENT_PAIR_CASES,
    probes: &["a<=2/3"],
};

const ADJ_2: LemmaDef = LemmaDef {
    id: "adj-2",
    title: "lc along G away from C^",
    variables: &["aP", "aQ", "m", "mt", "U", "W"],
    hypotheses: &[
        ("m <= 1", "", "hypothesis"),
        ("aP + m <= 2", "", "hypothesis"),
        ("aP + aQ + 2m <= 3", "", "hypothesis"),
    ],
    cases: &[
        CaseDef {
            name: "O not in F^",
            lines: &[("W <= mt", "", "(D^·G)_O <= D~·F"), ("W > 1", "", "exceptional coefficient mt - 1 vanishes off F^")],
        },
        CaseDef {
            name: "O in F^",
            lines: &[
                ("U <= m - mt", "", "(D^·F^)_O <= D~·F^"),
                ("U > 3 - aP - aQ - m - mt", "", "exceptional coefficient aP + aQ + m + mt - 2"),
            ],
        },
    ],
    probes: &["aP+aQ+2m<=3"],
};

const ADJ_4: LemmaDef = LemmaDef {
    id: "adj-4",
    title: "lc along the third exceptional curve",
    variables: &["aP", "aQ", "aO", "m", "mt", "mh", "U", "V"],
    hypotheses: &[
        ("m <= 1", "", "hypothesis"),
        ("aP + aQ + m + mt <= 3", "", "hypothesis"),
        ("2aP + aQ + aO + 4m <= 5", "", "hypothesis"),
    ],
    cases: &[
        CaseDef {
            name: "E in G-",
            lines: &[
                ("U <= mt - mh", "", "(D-·G-)_E <= D^·G^"),
                ("U > 5 - 2aP - aQ - aO - 2m - mt - mh", "", "exceptional coefficient 2aP + aQ + aO + 2m + mt + mh - 4"),
            ],
        },
        CaseDef {
            name: "E in F-",
            lines: &[
                ("V <= m - mt - mh", "", "(D-·F-)_E <= D^·F^"),
                ("V > 5 - 2aP - aQ - aO - 2m - mt - mh", "", "exceptional coefficient 2aP + aQ + aO + 2m + mt + mh - 4"),
            ],
        },
    ],
    probes: &["2aP+aQ+aO+4m<=5"],
};

const ADJ_7: LemmaDef = LemmaDef {
    id: "adj-7",
    title: "two curves through P, lc along F",
    variables: &["aP", "bP", "m", "U"],
    hypotheses: &[("m <= 1", "", "hypothesis"), ("aP + bP + m <= 2", "", "hypothesis")],
    cases: &[CaseDef {
        name: "Q in F",
        lines: &[("U <= m", "", "(D~·F)_Q <= D~·F = m"), ("U > 1", "", "exceptional coefficient on F off the strict transforms")],
    }],
    probes: &["m<=1"],
};

const ADJ_8: LemmaDef = LemmaDef {
    id: "adj-8",
    title: "two curves through P, lc along G away from C^ and Z^",
    variables: &["aP", "aQ", "bP", "bQ", "m", "mt", "U"],
    hypotheses: &[
        ("m <= 1", "", "hypothesis"),
        ("aP + bP + m <= 2", "", "hypothesis"),
        ("aP + aQ + bP + bQ + 2m <= 3", "", "hypothesis"),
    ],
    cases: &[
        CaseDef {
            name: "O not in F^",
            lines: &[("U <= mt", "", "(D^·G)_O <= D~·F"), ("U > 1", "", "exceptional coefficient mt - 1 vanishes off F^")],
        },
        CaseDef {
            name: "O in F^",
            lines: &[
                ("U <= m - mt", "", "(D^·F^)_O <= D~·F^"),
                ("U > 3 - aP - aQ - bP - bQ - m - mt", "", "exceptional coefficient aP + aQ + bP + bQ + m + mt - 2"),
            ],
        },
    ],
    probes: &["aP+aQ+bP+bQ+2m<=3"],
};

const DEFS: [LemmaDef; 12] =
    [LOCAL_1, LOCAL_2, LOCAL_3, LOCAL_4, LOCAL_5, LOCAL_6, LOCAL_7, LOCAL_8, ADJ_2, ADJ_4, ADJ_7, ADJ_8];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCase {
    pub name: String,
    pub system: LinearSystem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaEncoding {
    pub id: String,
    pub title: String,
    pub cases: Vec<LemmaCase>,
    /// Tags whose removal must make some case feasible.
    pub probes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub name: String,
    pub outcome: ProofOutcome,
    /// The certificate passed the independent checker (false when feasible).
    pub checked: bool,
}

impl CaseReport {
    pub fn certificate(&self) -> Option<&FarkasCertificate> {
        match &self.outcome {
            ProofOutcome::Infeasible(cert) => Some(cert),
            ProofOutcome::Feasible(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub id: String,
    pub cases: Vec<CaseReport>,
}

impl LemmaReport {
    pub fn verified(&self) -> bool {
        self.cases.iter().all(|c| c.checked)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub id: String,
    pub tag: String,
    pub case: String,
    pub witness: Vec<(String, Q)>,
}

/// Facts true in every case: all quantities non-negative, `x <= 1`, and
/// multiplicities drop along successive blow-ups.
fn standard_bounds(system: &mut LinearSystem, variables: &[&str]) {
    let has = |v: &str| variables.contains(&v);
    for v in variables {
        system.constrain_tagged(&format!("{v} >= 0"), None, "non-negative").expect("bound parses");
    }
    let chains = [("x <= 1", "x"), ("mt <= m", "mt"), ("mh <= mt", "mh")];
    for (text, var) in chains {
        if has(var) {
            system.constrain_tagged(text, None, "standing assumption").expect("bound parses");
        }
    }
}

fn build(def: &LemmaDef) -> LemmaEncoding {
    let cases = def
        .cases
        .iter()
        .map(|case| {
            let mut system = LinearSystem::new(def.variables);
            standard_bounds(&mut system, def.variables);
            for (text, tag, note) in def.hypotheses.iter().chain(case.lines) {
                let tag = (!tag.is_empty()).then_some(*tag);
                system.constrain_tagged(text, tag, note).expect("bank constraints parse");
            }
            LemmaCase { name: case.name.to_string(), system }
        })
        .collect();
    LemmaEncoding {
        id: def.id.to_string(),
        title: def.title.to_string(),
        cases,
        probes: def.probes.iter().map(|p| p.to_string()).collect(),
    }
}

pub fn lemma_bank() -> &'static [LemmaEncoding] {
    static BANK: OnceLock<Vec<LemmaEncoding>> = OnceLock::new();
    BANK.get_or_init(|| DEFS.iter().map(build).collect())
}

pub fn lemma_ids() -> Vec<&'static str> {
    DEFS.iter().map(|d| d.id).collect()
}

fn lookup(id: &str) -> Result<&'static LemmaEncoding, ProverError> {
    lemma_bank().iter().find(|l| l.id == id).ok_or_else(|| ProverError::UnknownLemma(id.to_string()))
}

pub fn verify_lemma(id: &str) -> Result<LemmaReport, ProverError> {
    let lemma = lookup(id)?;
    let mut cases = Vec::new();
    for case in &lemma.cases {
        let outcome = prove_infeasible(&case.system);
        let checked = match &outcome {
            ProofOutcome::Infeasible(cert) => check_certificate(&case.system, cert)?,
            ProofOutcome::Feasible(_) => false,
        };
        cases.push(CaseReport { name: case.name.clone(), outcome, checked });
    }
    Ok(LemmaReport { id: lemma.id.clone(), cases })
}

/// Drop every constraint tagged `tag` and return a witness from the first
/// case that becomes feasible.
pub fn relaxation_probe(id: &str, tag: &str) -> Result<ProbeReport, ProverError> {
    let lemma = lookup(id)?;
    let unknown = || ProverError::UnknownTag { lemma: id.to_string(), tag: tag.to_string() };
    if !lemma.cases.iter().any(|c| c.system.has_tag(tag)) {
        return Err(unknown());
    }
    for case in &lemma.cases {
        let (relaxed, removed) = case.system.without_tag(tag);
        if removed == 0 {
            continue;
        }
        if let ProofOutcome::Feasible(point) = prove_infeasible(&relaxed) {
            let witness = relaxed.variables().iter().cloned().zip(point).collect();
            return Ok(ProbeReport { id: id.to_string(), tag: tag.to_string(), case: case.name.clone(), witness });
        }
    }
    Err(ProverError::ProbeStillInfeasible { lemma: id.to_string(), tag: tag.to_string() })
}
