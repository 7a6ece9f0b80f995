//! The inference chain for `h = u(x²)`, `u = x^m - x - c`, its descent to `Q(ζ_p)`,
//! and the Prym premises built on top.

use num_bigint::BigInt;
use serde_json::json;

use super::{
    BaseField, Certificate, CertifyConfig, Claim, ClaimStatus, Invocation, Leaf, Params, Premise, Rule, RunConfig,
    Step, Verdict, SCHEMA_VERSION, TOOL_VERSION,
};
use crate::error::{Error, Result};
use crate::intpoly::{discriminant, IntPoly};
use crate::prymcalc::{dim_prym, FamilyParams};
use crate::signedperm::GroupDescriptor;

/// Largest `m` for which the heart is checked by spinning rather than cited.
const HEART_SPIN_LIMIT: u64 = 13;

fn leaf(fact: &str, l: Leaf) -> Result<Premise> {
    Premise::from_leaf(fact, l)
}

fn galois_statement(h: &IntPoly, field: BaseField, m: u64) -> String {
    format!("Gal({h} / {field}) = W(D_{m})")
}

/// Verdict text for the first failing premise of a list of steps.
fn first_failure(steps: &[&Step]) -> Option<String> {
    steps.iter().find_map(|s| s.first_failure()).map(|p| p.fact.clone())
}

fn params(p: Option<u64>, r: Option<u64>, m: u64, c: i64) -> Params {
    Params { p, r, m, n: 2 * m + 1, c }
}

/// Runs the deterministic chain for `Gal(u(x²)/Q) = W(D_m)` and falls back to
/// Frobenius sampling when it does not close.
///
/// The chain closes only for odd `m ≥ 9` and odd square `c`. The irreducibility
/// of `u` over `Q(√Δ_c)` is stated for general odd `c`, although the standard
/// argument for it is usually written out with `c = 1` only.
pub fn certify_wdm_over_q(m: u64, c: i64, config: &CertifyConfig) -> Result<Certificate> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("m must be at least 3, got {m}")));
    }
    let budget = config.prime_budget;
    let u = IntPoly::trinomial(m as usize, c);
    let h = u.compose_x2();
    let disc_u = discriminant(&u)?;
    let mi = m as i64;

    let irred_x2 = Step::new(
        "irred_x2",
        Rule::IrredX2,
        vec![
            leaf("m is odd", Leaf::Odd { n: mi })?,
            leaf(
                "u is irreducible and u + x + c vanishes to order 3",
                Leaf::CompositeRule { u: u.clone(), prime_budget: budget },
            )?,
        ],
        "h = u(x^2) is irreducible over Q",
    );
    let sm_cert = Step::new(
        "sm_cert",
        Rule::SmCert,
        vec![
            leaf("u is irreducible over Q", Leaf::Irreducible { poly: u.clone(), prime_budget: budget })?,
            leaf("disc(u) is not a square", Leaf::Square { n: disc_u.clone(), expect_square: false })?,
            leaf(
                "some Frobenius of u has a prime cycle q with m/2 < q < m-2",
                Leaf::JordanSearch { poly: u.clone(), prime_budget: budget },
            )?,
        ],
        format!("Gal(u / Q) = S_{m}"),
    );
    let containment = Step::new(
        "even_containment",
        Rule::EvenContainment,
        vec![leaf(
            "-u(0) is a square in Q",
            Leaf::EvenContainment { u: u.clone(), base: BaseField::Rationals },
        )?],
        format!("Gal(h / Q) is contained in W(D_{m})"),
    );
    let irred_delta = Step::new(
        "irred_delta",
        Rule::IrredDelta,
        vec![
            leaf("m >= 7", Leaf::AtLeast { value: m, bound: 7 })?,
            leaf("c is odd", Leaf::Odd { n: c })?,
            Premise::from_step(&sm_cert),
            leaf(
                "disc(u) = 1 mod 4, so Q(sqrt(disc u)) is unramified at 2",
                Leaf::DiscriminantResidue { poly: u.clone(), modulus: 4, expected: 1 },
            )?,
        ],
        "u is irreducible over Q(sqrt(disc u))",
    );
    let square_root = Step::new(
        "square_root",
        Rule::SquareRoot,
        vec![
            leaf("m >= 9", Leaf::AtLeast { value: m, bound: 9 })?,
            leaf("2m < m(m-1)/2, so A_m has no subgroup of index 2m", Leaf::IndexBound { m })?,
            Premise::from_step(&sm_cert),
            Premise::from_step(&irred_delta),
        ],
        "a root of h does not lie in the splitting field of u",
    );
    let mut two_group_premises = vec![
        leaf("m >= 9", Leaf::AtLeast { value: m, bound: 9 })?,
        leaf("m is odd", Leaf::Odd { n: mi })?,
        leaf("c is odd", Leaf::Odd { n: c })?,
        leaf("c is a square in Q", Leaf::Square { n: BigInt::from(c), expect_square: true })?,
        Premise::from_step(&irred_x2),
        Premise::from_step(&containment),
        Premise::from_step(&square_root),
    ];
    if m % 2 == 1 {
        let heart = if m <= HEART_SPIN_LIMIT {
            Leaf::HeartIrreducible { m: m as usize }
        } else {
            Leaf::Cited {
                statement: format!("the sum-zero subspace of F_2^{m} is an irreducible A_{m}-module"),
            }
        };
        two_group_premises.push(leaf("the heart of F_2^m is irreducible under A_m", heart)?);
    }
    let two_group = Step::new(
        "two_group",
        Rule::TwoGroup,
        two_group_premises,
        galois_statement(&h, BaseField::Rationals, m),
    );

    let mut steps = vec![irred_x2, sm_cert, containment, irred_delta, square_root, two_group];
    let statement = galois_statement(&h, BaseField::Rationals, m);
    let verdict;
    let claim_status;
    let mut basis = "deterministic chain".to_string();
    if steps.iter().all(|s| s.holds) {
        verdict = Verdict::Deterministic;
        claim_status = ClaimStatus::Proved;
    } else if m % 2 == 0 || c % 2 == 0 {
        let what = if m % 2 == 0 { "m is odd" } else { "c is odd" };
        verdict = Verdict::Inconclusive { failed_premise: what.into() };
        claim_status = ClaimStatus::Unsupported;
    } else if let Some(reason) = structural_refutation(&steps) {
        verdict = Verdict::Refuted { reason };
        claim_status = ClaimStatus::Refuted;
    } else {
        let stalled = first_failure(&steps.iter().collect::<Vec<_>>()).unwrap_or_default();
        let sample = Step::new(
            "chebotarev",
            Rule::ChebotarevVerdict,
            vec![leaf(
                "no Frobenius cycle type outside W(D_m)",
                Leaf::Chebotarev {
                    poly: h.clone(),
                    target: GroupDescriptor::WDm { m: m as usize },
                    options: config.sampling(),
                },
            )?],
            format!("Frobenius statistics of h are consistent with W(D_{m})"),
        );
        let value = &sample.premises[0].value;
        if sample.holds {
            verdict = Verdict::Probabilistic {
                note: format!(
                    "deterministic chain stops at {stalled:?}; {} sampled primes show only W(D_{m}) cycle types (not a proof)",
                    value["primes_used"]
                ),
            };
            claim_status = ClaimStatus::Probable;
        } else {
            verdict = Verdict::Refuted {
                reason: format!(
                    "h mod {} has cycle type {} which no element of W(D_{m}) induces",
                    value["witness_prime"], value["witness_type"]
                ),
            };
            claim_status = ClaimStatus::Refuted;
        }
        basis = "Frobenius sampling".to_string();
        steps.push(sample);
    }

    Ok(Certificate {
        version: SCHEMA_VERSION.into(),
        tool_version: TOOL_VERSION.into(),
        run_config: RunConfig {
            invocation: Invocation::CertifyWdmOverQ { m, c },
            config: *config,
        },
        params: params(None, None, m, c),
        polynomial: h,
        field: BaseField::Rationals,
        steps,
        verdict,
        claims: vec![Claim { statement, status: claim_status, basis }],
    })
}

/// A failed premise that disproves the claim outright rather than stalling.
fn structural_refutation(steps: &[Step]) -> Option<String> {
    let premise = |id: &str, i: usize| steps.iter().find(|s| s.id == id).map(|s| &s.premises[i]);
    if let Some(p) = premise("even_containment", 0) {
        if p.value["outcome"] == "not_contained" {
            return Some("-u(0) is not a square in Q, so Gal(h / Q) is not contained in W(D_m)".into());
        }
    }
    if let Some(p) = premise("sm_cert", 0) {
        if p.value["verdict"] == "reducible" {
            return Some(format!("u is reducible over Q: factor {}", p.value["factor"]));
        }
    }
    None
}

/// Extends a certificate over `Q` to `Q(ζ_p)` when `m = pr - 1`, `c = 1` and
/// `p ∤ disc(h)`. Never improves on the base verdict.
pub fn cyclotomic_descent(base: &Certificate, p: u64, r: u64) -> Result<Certificate> {
    let Invocation::CertifyWdmOverQ { m, c } = base.run_config.invocation else {
        return Err(Error::Certificate("descent needs a certificate over Q".into()));
    };
    let fam = FamilyParams::new(p, r, 1)?;
    let concluding = base.step("two_group").filter(|s| s.holds).or_else(|| base.step("chebotarev"));
    let mut base_premise = match concluding {
        Some(s) => Premise::from_step(s),
        None => Premise {
            fact: galois_statement(&base.polynomial, BaseField::Rationals, m),
            leaf: None,
            step: None,
            value: json!(false),
            holds: false,
        },
    };
    base_premise.value = serde_json::to_value(&base.verdict)?;
    let own = vec![
        leaf("m = pr - 1", Leaf::Equal { left: m as i64, right: fam.m as i64 })?,
        leaf("c = 1", Leaf::Equal { left: c, right: 1 })?,
        leaf("condition (3): p does not divide 1 + 2^(r-2)", Leaf::ConditionPR { p, r })?,
        leaf(
            "gcd(disc(h), p) = 1",
            Leaf::DiscriminantCoprime { poly: base.polynomial.clone(), p },
        )?,
    ];
    let failed = own.iter().find(|p| !p.holds).map(|p| p.fact.clone());
    let mut premises = vec![base_premise];
    premises.extend(own);
    let field = BaseField::Cyclotomic { p };
    let descent = Step::new(
        "descent",
        Rule::CyclotomicDescent,
        premises,
        galois_statement(&base.polynomial, field, m),
    );
    let verdict = match (&base.verdict, failed) {
        (Verdict::Refuted { .. } | Verdict::Inconclusive { .. }, _) => base.verdict.clone(),
        (_, Some(fact)) => Verdict::Inconclusive { failed_premise: fact },
        (v, None) => v.clone(),
    };
    let status = match &verdict {
        Verdict::Deterministic => ClaimStatus::Proved,
        Verdict::Probabilistic { .. } => ClaimStatus::Probable,
        Verdict::Refuted { .. } => ClaimStatus::Refuted,
        Verdict::Inconclusive { .. } => ClaimStatus::Unsupported,
    };
    let mut claims = base.claims.clone();
    claims.push(Claim {
        statement: descent.conclusion.clone(),
        status,
        basis: "linear disjointness of Q(zeta_p) and the splitting field of h (coprime discriminants)".into(),
    });
    let mut steps = base.steps.clone();
    steps.push(descent);
    Ok(Certificate {
        version: SCHEMA_VERSION.into(),
        tool_version: TOOL_VERSION.into(),
        run_config: RunConfig {
            invocation: Invocation::CyclotomicDescent { p, r, m, c },
            config: base.run_config.config,
        },
        params: params(Some(p), Some(r), m, c),
        polynomial: base.polynomial.clone(),
        field,
        steps,
        verdict,
        claims,
    })
}

/// Full pipeline for the Prym of `y^p = x·u(x²)` with `m = pr - 1`. The geometric
/// conclusions are attributed claims: only their premises are checked here.
pub fn certify_prym(p: u64, r: u64, c: i64, config: &CertifyConfig) -> Result<Certificate> {
    let fam = FamilyParams::new(p, r, c)?;
    let m = fam.m;
    let invocation = Invocation::CertifyPrym { p, r, c };
    let field = BaseField::Cyclotomic { p };
    let run_config = RunConfig { invocation, config: *config };
    let dim = dim_prym(p, m);
    let prym = format!("Prym(C_{{f,{p}}})");
    let geometric = |status: ClaimStatus| {
        vec![
            Claim {
                statement: format!("dim {prym} = {dim}"),
                status: ClaimStatus::Computed,
                basis: "dim = m(p-1)/2".into(),
            },
            Claim {
                statement: format!("End = Z[zeta_{p}] for {prym}"),
                status,
                basis: "endomorphism criterion for Pryms with doubly transitive Galois action, premises in steps centralizer and prym_premises".into(),
            },
            Claim {
                statement: format!("{prym} is isomorphic neither to a jacobian nor to a product of jacobians"),
                status,
                basis: "multiplicity criterion for non-jacobian Pryms, premises in step prym_premises".into(),
            },
        ]
    };

    if r % 2 == 1 {
        let u = IntPoly::trinomial(m as usize, c);
        let step = Step::new(
            "r_even",
            Rule::PrymPremises,
            vec![leaf("r even", Leaf::Even { n: r as i64 })?],
            "m = pr - 1 is odd",
        );
        return Ok(Certificate {
            version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            run_config,
            params: params(Some(p), Some(r), m, c),
            polynomial: u.compose_x2(),
            field,
            steps: vec![step],
            verdict: Verdict::Inconclusive { failed_premise: "r even".into() },
            claims: geometric(ClaimStatus::Unsupported),
        });
    }

    let base = certify_wdm_over_q(m, c, config)?;
    let mut cert = cyclotomic_descent(&base, p, r)?;
    let descent = cert.step("descent").expect("descent step").clone();
    let mu = m as usize;
    let centralizer = Step::new(
        "centralizer",
        Rule::Centralizer,
        vec![
            leaf(
                "dim End_{W(D_m)}(V_f^-) = 1 over F_p",
                Leaf::Commutant { m: mu, p, expected: 1 },
            )?,
            leaf("the lambda-torsion has F_p-rank m = dim V_f^-", Leaf::LambdaRank { p, m })?,
        ],
        "V_f^- is absolutely simple with trivial commutant",
    );
    let prym_premises = Step::new(
        "prym_premises",
        Rule::PrymPremises,
        vec![
            leaf("r even", Leaf::Even { n: r as i64 })?,
            Premise::from_step(&descent),
            Premise::from_step(&centralizer),
            leaf("S_m is doubly transitive", Leaf::Transitivity { m: mu, k: 2 })?,
            leaf(
                "S_m has no normal subgroup whose index divides m",
                Leaf::NormalIndex { m: mu },
            )?,
            leaf("multiplicities are pairwise distinct", Leaf::MultiplicitiesDistinct { p, r })?,
            leaf("multiplicities are coprime", Leaf::MultiplicitiesCoprime { p, r })?,
            leaf("non-jacobian inequality", Leaf::NonJacobianInequality { p, r })?,
        ],
        format!("hypotheses of the endomorphism and non-jacobian criteria hold for {prym}"),
    );
    let verdict = match cert.verdict.clone() {
        Verdict::Deterministic => match first_failure(&[&centralizer, &prym_premises]) {
            Some(fact) => Verdict::Inconclusive { failed_premise: fact },
            None => Verdict::Deterministic,
        },
        other => other,
    };
    let status = match verdict {
        Verdict::Deterministic => ClaimStatus::Attributed,
        Verdict::Probabilistic { .. } if centralizer.holds && prym_premises.holds => ClaimStatus::Probable,
        _ => ClaimStatus::Unsupported,
    };
    cert.steps.push(centralizer);
    cert.steps.push(prym_premises);
    cert.claims.extend(geometric(status));
    cert.verdict = verdict;
    cert.run_config = run_config;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galoiscert::{chebotarev_verdict, even_containment, replay, Containment, SamplingOptions};
    use proptest::prelude::*;

    fn cfg() -> CertifyConfig {
        CertifyConfig::default()
    }

    #[test]
    fn m11_is_deterministic() {
        let cert = certify_wdm_over_q(11, 1, &cfg()).unwrap();
        assert_eq!(cert.verdict, Verdict::Deterministic);
        assert_eq!(cert.claims[0].statement, "Gal(x^22 - x^2 - 1 / Q) = W(D_11)");
        assert_eq!(cert.claims[0].status, ClaimStatus::Proved);
        assert!(cert.step("chebotarev").is_none());
        let jordan = &cert.step("sm_cert").unwrap().premises[2].value;
        assert_eq!(jordan["jordan_prime"], 7);
    }

    #[test]
    fn small_m_falls_back_to_sampling() {
        for m in [3, 5, 7] {
            let cert = certify_wdm_over_q(m, 1, &cfg()).unwrap();
            assert!(matches!(cert.verdict, Verdict::Probabilistic { .. }), "m={m}: {:?}", cert.verdict);
            let sample = cert.step("chebotarev").unwrap();
            assert!(sample.holds);
            assert_eq!(sample.premises[0].value["primes_used"], 2000);
        }
    }

    #[test]
    fn odd_square_c_nine() {
        let cert = certify_wdm_over_q(9, 9, &cfg()).unwrap();
        assert_eq!(cert.verdict, Verdict::Deterministic);
    }

    #[test]
    fn non_square_c_is_refuted_by_containment() {
        let cert = certify_wdm_over_q(9, 3, &cfg()).unwrap();
        assert!(matches!(cert.verdict, Verdict::Refuted { .. }));
        let value = &cert.step("even_containment").unwrap().premises[0].value;
        assert_eq!(value["outcome"], "not_contained");
    }

    #[test]
    fn parity_failures_are_inconclusive() {
        let even_c = certify_wdm_over_q(11, 2, &cfg()).unwrap();
        assert_eq!(even_c.verdict, Verdict::Inconclusive { failed_premise: "c is odd".into() });
        let even_m = certify_wdm_over_q(10, 1, &cfg()).unwrap();
        assert_eq!(even_m.verdict, Verdict::Inconclusive { failed_premise: "m is odd".into() });
        assert!(certify_wdm_over_q(2, 1, &cfg()).is_err());
    }

    #[test]
    fn descent_examples() {
        let base = certify_wdm_over_q(11, 1, &cfg()).unwrap();
        assert_eq!(cyclotomic_descent(&base, 3, 4).unwrap().verdict, Verdict::Deterministic);

        let base = certify_wdm_over_q(19, 1, &cfg()).unwrap();
        let refused = cyclotomic_descent(&base, 5, 4).unwrap();
        let Verdict::Inconclusive { failed_premise } = &refused.verdict else {
            panic!("{:?}", refused.verdict);
        };
        assert!(failed_premise.starts_with("condition (3)"));
        // The claim over Q survives.
        assert_eq!(refused.claims[0].status, ClaimStatus::Proved);

        let base = certify_wdm_over_q(5, 1, &cfg()).unwrap();
        let d = cyclotomic_descent(&base, 3, 2).unwrap();
        assert!(matches!(d.verdict, Verdict::Probabilistic { .. }));
        assert!(d.step("descent").unwrap().holds);
    }

    #[test]
    fn descent_checks_its_parameters() {
        let base = certify_wdm_over_q(9, 9, &cfg()).unwrap();
        let d = cyclotomic_descent(&base, 5, 2).unwrap();
        assert_eq!(d.verdict, Verdict::Inconclusive { failed_premise: "c = 1".into() });
        let base = certify_wdm_over_q(13, 1, &cfg()).unwrap();
        let d = cyclotomic_descent(&base, 3, 4).unwrap();
        assert_eq!(d.verdict, Verdict::Inconclusive { failed_premise: "m = pr - 1".into() });
        assert!(cyclotomic_descent(&base, 4, 4).is_err());
        assert!(cyclotomic_descent(&d, 3, 4).is_err());
    }

    #[test]
    fn prym_examples() {
        let cert = certify_prym(3, 4, 1, &cfg()).unwrap();
        assert_eq!(cert.verdict, Verdict::Deterministic);
        let statements: Vec<_> = cert.claims.iter().map(|c| c.statement.as_str()).collect();
        assert!(statements.contains(&"End = Z[zeta_3] for Prym(C_{f,3})"));
        assert!(statements.contains(&"dim Prym(C_{f,3}) = 11"));
        assert!(statements.iter().any(|s| s.contains("neither to a jacobian nor to a product")));
        assert!(cert.claims.iter().any(|c| c.status == ClaimStatus::Attributed));

        let odd_r = certify_prym(3, 3, 1, &cfg()).unwrap();
        assert_eq!(odd_r.verdict, Verdict::Inconclusive { failed_premise: "r even".into() });

        let cond3 = certify_prym(5, 4, 1, &cfg()).unwrap();
        assert!(matches!(&cond3.verdict, Verdict::Inconclusive { failed_premise } if failed_premise.starts_with("condition (3)")));

        assert!(certify_prym(4, 2, 1, &cfg()).is_err());
        assert!(certify_prym(3, 1, 1, &cfg()).is_err());
    }

    #[test]
    fn replay_reproduces_and_detects_tampering() {
        for cert in [certify_prym(3, 4, 1, &cfg()).unwrap(), certify_prym(3, 2, 1, &cfg()).unwrap()] {
            let json = cert.to_json().unwrap();
            let back = Certificate::from_json(&json).unwrap();
            assert_eq!(back, cert);
            let report = replay(&back).unwrap();
            assert!(report.ok(), "{report:?}");
            assert_eq!(report.verdict, cert.verdict);
            assert_eq!(serde_json::to_string(&back).unwrap(), serde_json::to_string(&cert).unwrap());
        }

        let mut cert = certify_prym(3, 4, 1, &cfg()).unwrap();
        cert.steps[0].premises[0].value = serde_json::json!(0);
        let report = replay(&cert).unwrap();
        assert!(!report.ok());
        assert_eq!(report.mismatches.len(), 1);

        let mut cert = certify_wdm_over_q(11, 1, &cfg()).unwrap();
        cert.steps[3].premises[2].step = Some("two_group".into());
        assert!(!replay(&cert).unwrap().ok());

        let mut json: serde_json::Value = serde_json::to_value(certify_wdm_over_q(11, 1, &cfg()).unwrap()).unwrap();
        json["version"] = "prym-cert/0".into();
        assert!(Certificate::from_json(&json.to_string()).is_err());
    }

    #[test]
    fn containment_agrees_with_sampled_types() {
        // Containment is proved, so sampling must never contradict it.
        for (m, c) in [(3u64, 1i64), (5, 1), (7, 1), (3, 9), (5, -1)] {
            let u = IntPoly::trinomial(m as usize, c);
            let contained = even_containment(&u, BaseField::Rationals) == Containment::Contained;
            let options = SamplingOptions { samples: 300, ..Default::default() };
            let v = chebotarev_verdict(&u.compose_x2(), &GroupDescriptor::WDm { m: m as usize }, &options)
                .unwrap();
            if contained {
                assert!(!v.is_refuted(), "m={m} c={c}");
            } else {
                assert!(v.is_refuted(), "m={m} c={c}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn deterministic_only_for_odd_m_at_least_nine_and_odd_c(m in 3u64..=14, c in -9i64..=9) {
            let config = CertifyConfig { samples: 40, ..CertifyConfig::default() };
            let cert = certify_wdm_over_q(m, c, &config).unwrap();
            if cert.verdict.is_deterministic() {
                prop_assert!(m >= 9 && m % 2 == 1 && c % 2 != 0);
            }
        }

        #[test]
        fn descent_never_upgrades(m in 3u64..=9, p in prop::sample::select(vec![3u64, 5, 7]), r in 2u64..=4) {
            let config = CertifyConfig { samples: 40, ..CertifyConfig::default() };
            let base = certify_wdm_over_q(m, 1, &config).unwrap();
            let d = cyclotomic_descent(&base, p, r).unwrap();
            if d.verdict.is_deterministic() {
                prop_assert!(base.verdict.is_deterministic());
            }
        }
    }
}
