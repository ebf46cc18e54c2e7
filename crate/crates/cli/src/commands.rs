//! The subcommands, each producing a report document.

use serde::Serialize;
use symbern_core::characters::character;
use symbern_core::identities::{SweepSummary, VerificationReport};
use symbern_core::{
    enumerate_characters, gen_bernoulli_number, gen_bernoulli_poly, lambda_series, parse_rational, power_sum,
    sweep_verify, CharacterId, LambdaFamily, LambdaSpec, Perturbation, Theorem, Weights,
};

use crate::config::SweepConfig;
use crate::report::{Format, ReportDocument, Tabular, Value};
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct CharRecord {
    pub id: String,
    pub label: usize,
    pub order: u64,
    pub conductor: u64,
    pub primitive: bool,
    pub exponents: Vec<u64>,
    /// `chi(0), chi(1), ..., chi(d-1)`
    pub values: Vec<String>,
}

impl Tabular for CharRecord {
    fn headers() -> Vec<&'static str> {
        vec!["id", "order", "conductor", "primitive", "values chi(0..d)"]
    }

    fn row(&self) -> Vec<String> {
        vec![
            self.id.clone(),
            self.order.to_string(),
            self.conductor.to_string(),
            self.primitive.to_string(),
            self.values.join(" "),
        ]
    }
}

#[derive(Debug, Serialize)]
pub struct CharsEcho {
    pub modulus: u64,
}

#[derive(Debug, Serialize)]
pub struct CharsSummary {
    pub characters: usize,
    pub primitive: usize,
}

pub fn cmd_chars(d: u64, format: Format) -> Result<(String, bool), CliError> {
    let chars = enumerate_characters(d)?;
    let records: Vec<CharRecord> = chars
        .iter()
        .map(|c| CharRecord {
            id: c.id().to_string(),
            label: c.label(),
            order: c.order(),
            conductor: c.conductor(),
            primitive: c.is_primitive(),
            exponents: c.exponents().to_vec(),
            values: c.values().iter().map(|v| Value::new(v).short().to_string()).collect(),
        })
        .collect();
    let summary = CharsSummary { characters: records.len(), primitive: records.iter().filter(|r| r.primitive).count() };
    let doc = ReportDocument::new("chars", CharsEcho { modulus: d }, records, summary);
    Ok((doc.render(format), true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComputeKind {
    BernoulliNumber,
    BernoulliPoly,
    PowerSum,
}

#[derive(Debug, Serialize)]
pub struct ComputeEcho {
    pub kind: ComputeKind,
    pub character: String,
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ValueRecord {
    pub value: Value,
}

impl Tabular for ValueRecord {
    fn headers() -> Vec<&'static str> {
        vec!["value", "cyclotomic"]
    }

    fn row(&self) -> Vec<String> {
        vec![self.value.short().to_string(), self.value.cyclotomic.clone()]
    }
}

#[derive(Debug, Serialize)]
pub struct CountSummary {
    pub values: usize,
}

pub fn cmd_compute(
    kind: ComputeKind,
    id: CharacterId,
    n: u64,
    k: Option<u32>,
    x: Option<&str>,
    format: Format,
) -> Result<(String, bool), CliError> {
    let chi = character(id)?;
    let (value, echo_k, echo_x) = match kind {
        ComputeKind::BernoulliNumber => (gen_bernoulli_number(&chi, n as usize), None, None),
        ComputeKind::BernoulliPoly => {
            let text = x.unwrap_or("0");
            let xr = parse_rational(text)?;
            (gen_bernoulli_poly(&chi, n as usize, &xr), None, Some(xr.to_string()))
        }
        ComputeKind::PowerSum => {
            let k = k.ok_or_else(|| CliError::Usage("power-sum needs --k (the exponent)".into()))?;
            (power_sum(&chi, k, n), Some(k), None)
        }
    };
    let echo = ComputeEcho { kind, character: id.to_string(), n, k: echo_k, x: echo_x };
    let doc = ReportDocument::new(
        "compute",
        echo,
        vec![ValueRecord { value: Value::new(&value) }],
        CountSummary { values: 1 },
    );
    Ok((doc.render(format), true))
}

#[derive(Debug, Serialize)]
pub struct LambdaEcho {
    pub family: LambdaFamily,
    pub index: u8,
    pub character: String,
    pub weights: Weights,
    pub ys: Vec<String>,
    pub order: usize,
}

#[derive(Debug, Serialize)]
pub struct CoefficientRecord {
    pub n: usize,
    pub value: Value,
}

impl Tabular for CoefficientRecord {
    fn headers() -> Vec<&'static str> {
        vec!["n", "n! [t^n]", "cyclotomic"]
    }

    fn row(&self) -> Vec<String> {
        vec![self.n.to_string(), self.value.short().to_string(), self.value.cyclotomic.clone()]
    }
}

pub fn cmd_lambda(
    family: LambdaFamily,
    index: u8,
    weights: Weights,
    ys: &[String],
    id: CharacterId,
    order: usize,
    format: Format,
) -> Result<(String, bool), CliError> {
    let chi = character(id)?;
    let parsed = ys.iter().map(|y| parse_rational(y)).collect::<Result<Vec<_>, _>>()?;
    let spec = LambdaSpec::with_prefix(family, index, weights, &parsed)?;
    let series = lambda_series(&spec, &chi, order);
    let records: Vec<CoefficientRecord> =
        series.egf_coeffs().iter().enumerate().map(|(n, v)| CoefficientRecord { n, value: Value::new(v) }).collect();
    let echo = LambdaEcho {
        family,
        index,
        character: id.to_string(),
        weights,
        ys: spec.ys().iter().map(|y| y.to_string()).collect(),
        order,
    };
    let summary = CountSummary { values: records.len() };
    Ok((ReportDocument::new("lambda", echo, records, summary).render(format), true))
}

#[derive(Debug, Serialize)]
pub struct ExpressionValue {
    pub label: String,
    pub value: Value,
}

#[derive(Debug, Serialize)]
pub struct Mismatch {
    pub first: usize,
    pub second: usize,
    pub first_value: Value,
    pub second_value: Value,
}

#[derive(Debug, Serialize)]
pub struct OrbitRecord {
    pub expression: String,
    pub equals_expression: Option<usize>,
    /// index relabelling `(k,l,m) -> (.,.,.)` that matches summands one for one
    pub termwise: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct VariantRecord {
    pub expression: usize,
    pub value: Value,
    pub equals_orbit_value: bool,
    pub distinguishable: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyRecord {
    pub theorem: Theorem,
    pub character: String,
    pub n: usize,
    pub weights: Weights,
    pub ys: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturb: Option<Perturbation>,
    pub expressions: Vec<ExpressionValue>,
    pub all_equal: bool,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub orbit_checks: Vec<OrbitRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t3_variant: Option<VariantRecord>,
}

const INDEX_NAMES: [&str; 3] = ["k", "l", "m"];

impl VerifyRecord {
    fn new(r: &VerificationReport) -> VerifyRecord {
        let inst = &r.instance;
        let expansion = inst.theorem.expansion();
        VerifyRecord {
            theorem: inst.theorem,
            character: inst.character.to_string(),
            n: inst.n,
            weights: inst.weights,
            ys: inst.ys.iter().map(|y| y.to_string()).collect(),
            perturb: inst.perturbation,
            expressions: r
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| ExpressionValue { label: inst.expression_label(i), value: Value::new(v) })
                .collect(),
            all_equal: r.all_equal,
            passed: r.passed(),
            mismatch: r.first_mismatch.map(|(i, j)| Mismatch {
                first: i,
                second: j,
                first_value: Value::new(&r.values[i]),
                second_value: Value::new(&r.values[j]),
            }),
            orbit_checks: r
                .orbit_checks
                .iter()
                .map(|c| {
                    let p = c.permutation;
                    OrbitRecord {
                        expression: format!("{expansion}(w{},w{},w{})", p[0] + 1, p[1] + 1, p[2] + 1),
                        equals_expression: c.equals_expression,
                        termwise: c.termwise.map(|(j, s)| {
                            format!(
                                "expression {j} at ({},{},{})",
                                INDEX_NAMES[s[0]], INDEX_NAMES[s[1]], INDEX_NAMES[s[2]]
                            )
                        }),
                        passed: c.passed(),
                    }
                })
                .collect(),
            t3_variant: r.t3_variant.as_ref().map(|p| VariantRecord {
                expression: p.expression,
                value: Value::new(&p.value),
                equals_orbit_value: p.equals_orbit_value,
                distinguishable: p.distinguishable,
            }),
        }
    }
}

impl Tabular for VerifyRecord {
    fn headers() -> Vec<&'static str> {
        vec!["theorem", "character", "n", "weights", "ys", "verdict", "value", "T3 variant"]
    }

    fn row(&self) -> Vec<String> {
        let value = match &self.mismatch {
            Some(m) => format!(
                "expression {} = {} but expression {} = {}",
                m.first,
                m.first_value.short(),
                m.second,
                m.second_value.short()
            ),
            None => self.expressions[0].value.short().to_string(),
        };
        let variant = match &self.t3_variant {
            Some(p) if !p.distinguishable => "same".to_string(),
            Some(p) if p.equals_orbit_value => "holds".to_string(),
            Some(_) => "fails".to_string(),
            None => "-".to_string(),
        };
        vec![
            self.theorem.to_string(),
            self.character.clone(),
            self.n.to_string(),
            self.weights.to_string(),
            self.ys.join(","),
            if self.passed { "PASS" } else { "FAIL" }.to_string(),
            value,
            variant,
        ]
    }
}

/// Runs a sweep; the flag is `true` iff no instance failed.
pub fn cmd_verify(
    command: &'static str,
    config: &SweepConfig,
    jobs: Option<usize>,
    format: Format,
) -> Result<(String, bool), CliError> {
    let grid = config.grid()?;
    let outcome = sweep_verify(&grid, jobs)?;
    let records: Vec<VerifyRecord> = outcome.reports.iter().map(VerifyRecord::new).collect();
    let summary: SweepSummary = outcome.summary;
    let ok = summary.failures == 0;
    Ok((ReportDocument::new(command, config, records, summary).render(format), ok))
}
