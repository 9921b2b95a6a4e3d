//! Text serialization of [`ClassifierModel`].
//!
//! ```text
//! SENTMODEL v1
//! kind    SGDC
//! labels  neg neu pos
//! dim     2015
//! meta    <key> <value>        (hyperparameters, n_train)
//! loss    <v> <v> ...          (per-epoch loss, may be empty)
//! <param> <class> <v> <v> ...  (one row per class)
//! ```
//!
//! Fields are tab separated. Reals are written with 17 significant digits,
//! which round-trips every `f64` exactly.

use std::fmt::Write as _;

use super::{
    ClassifierKind, ClassifierModel, Hyperparams, LearnError, LinearParams, ModelParams,
    TrainingMeta,
};

pub const MODEL_HEADER: &str = "SENTMODEL v1";

pub(crate) fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) fn parse_real(s: &str, line: usize) -> Result<f64, LearnError> {
    s.parse::<f64>().map_err(|_| LearnError::Parse {
        line,
        message: format!("invalid number {s:?}"),
    })
}

fn row(out: &mut String, tag: &str, class: Option<usize>, values: &[f64]) {
    out.push_str(tag);
    if let Some(c) = class {
        let _ = write!(out, "\t{c}");
    }
    for v in values {
        out.push('\t');
        out.push_str(&fmt_real(*v));
    }
    out.push('\n');
}

pub(super) fn write_model(model: &ClassifierModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MODEL_HEADER}");
    let _ = writeln!(out, "kind\t{}", model.kind);
    let _ = writeln!(out, "labels\t{}", model.labels.join("\t"));
    let _ = writeln!(out, "dim\t{}", model.dim);
    let h = &model.meta.hyperparams;
    let _ = writeln!(out, "meta\tlearning_rate\t{}", fmt_real(h.learning_rate));
    let _ = writeln!(out, "meta\tl2\t{}", fmt_real(h.l2));
    let _ = writeln!(out, "meta\tepochs\t{}", h.epochs);
    let _ = writeln!(out, "meta\tseed\t{}", h.seed);
    let _ = writeln!(out, "meta\tvar_floor\t{}", fmt_real(h.var_floor));
    let _ = writeln!(out, "meta\tsmoothing\t{}", fmt_real(h.smoothing));
    let _ = writeln!(out, "meta\tn_train\t{}", model.meta.n_train);
    row(&mut out, "loss", None, &model.meta.loss_history);
    match &model.params {
        ModelParams::Gaussian {
            log_prior,
            mean,
            var,
        } => {
            row(&mut out, "prior", None, log_prior);
            for (c, m) in mean.iter().enumerate() {
                row(&mut out, "mean", Some(c), m);
            }
            for (c, v) in var.iter().enumerate() {
                row(&mut out, "var", Some(c), v);
            }
        }
        ModelParams::Bernoulli {
            log_prior,
            log_p,
            log_q,
        } => {
            row(&mut out, "prior", None, log_prior);
            for (c, p) in log_p.iter().enumerate() {
                row(&mut out, "logp", Some(c), p);
            }
            for (c, q) in log_q.iter().enumerate() {
                row(&mut out, "logq", Some(c), q);
            }
        }
        ModelParams::Multinomial {
            log_prior,
            log_theta,
        } => {
            row(&mut out, "prior", None, log_prior);
            for (c, t) in log_theta.iter().enumerate() {
                row(&mut out, "logp", Some(c), t);
            }
        }
        ModelParams::Linear(p) => {
            row(&mut out, "bias", None, &p.bias);
            for (c, w) in p.weights.iter().enumerate() {
                row(&mut out, "weight", Some(c), w);
            }
        }
    }
    out
}

#[derive(Default)]
struct Rows {
    prior: Option<Vec<f64>>,
    bias: Option<Vec<f64>>,
    per_class: Vec<(String, usize, Vec<f64>)>,
}

impl Rows {
    fn take(&mut self, tag: &str, k: usize, dim: usize) -> Result<Vec<Vec<f64>>, LearnError> {
        let mut out = vec![None; k];
        for (_, c, v) in self.per_class.iter().filter(|r| r.0 == tag) {
            if *c >= k || v.len() != dim {
                return Err(err(0, format!("malformed {tag} row for class {c}")));
            }
            out[*c] = Some(v.clone());
        }
        out.into_iter()
            .enumerate()
            .map(|(c, v)| v.ok_or_else(|| err(0, format!("missing {tag} row for class {c}"))))
            .collect()
    }
}

fn err(line: usize, message: impl Into<String>) -> LearnError {
    LearnError::Parse {
        line,
        message: message.into(),
    }
}

pub(super) fn parse_model(text: &str) -> Result<ClassifierModel, LearnError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, MODEL_HEADER)) => {}
        _ => return Err(err(1, format!("expected header {MODEL_HEADER:?}"))),
    }
    let mut kind = None;
    let mut labels: Option<Vec<String>> = None;
    let mut dim = None;
    let mut hyper = Hyperparams::default();
    let mut n_train = 0;
    let mut loss_history = Vec::new();
    let mut rows = Rows::default();

    for (n, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let reals = |from: usize| -> Result<Vec<f64>, LearnError> {
            fields[from..].iter().map(|s| parse_real(s, n)).collect()
        };
        match fields[0] {
            "kind" => {
                kind = Some(
                    fields
                        .get(1)
                        .ok_or_else(|| err(n, "missing kind"))?
                        .parse::<ClassifierKind>()?,
                )
            }
            "labels" => labels = Some(fields[1..].iter().map(|s| s.to_string()).collect()),
            "dim" => {
                dim = Some(
                    fields
                        .get(1)
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or_else(|| err(n, "invalid dim"))?,
                )
            }
            "meta" => {
                let (Some(key), Some(value)) = (fields.get(1), fields.get(2)) else {
                    return Err(err(n, "meta row needs key and value"));
                };
                let int = || {
                    value
                        .parse::<u64>()
                        .map_err(|_| err(n, format!("invalid integer {value:?}")))
                };
                match *key {
                    "learning_rate" => hyper.learning_rate = parse_real(value, n)?,
                    "l2" => hyper.l2 = parse_real(value, n)?,
                    "epochs" => hyper.epochs = int()? as usize,
                    "seed" => hyper.seed = int()?,
                    "var_floor" => hyper.var_floor = parse_real(value, n)?,
                    "smoothing" => hyper.smoothing = parse_real(value, n)?,
                    "n_train" => n_train = int()? as usize,
                    other => return Err(err(n, format!("unknown meta key {other:?}"))),
                }
            }
            "loss" => loss_history = reals(1)?,
            "prior" => rows.prior = Some(reals(1)?),
            "bias" => rows.bias = Some(reals(1)?),
            tag @ ("mean" | "var" | "logp" | "logq" | "weight") => {
                let class = fields
                    .get(1)
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| err(n, "missing class index"))?;
                rows.per_class.push((tag.to_string(), class, reals(2)?));
            }
            other => return Err(err(n, format!("unknown row {other:?}"))),
        }
    }

    let kind = kind.ok_or_else(|| err(0, "missing kind row"))?;
    let labels = labels.ok_or_else(|| err(0, "missing labels row"))?;
    let dim = dim.ok_or_else(|| err(0, "missing dim row"))?;
    let k = labels.len();
    let check_len = |v: Option<Vec<f64>>, what: &str| -> Result<Vec<f64>, LearnError> {
        let v = v.ok_or_else(|| err(0, format!("missing {what} row")))?;
        if v.len() != k {
            return Err(err(
                0,
                format!("{what} row has {} values, expected {k}", v.len()),
            ));
        }
        Ok(v)
    };

    let params = match kind {
        ClassifierKind::Gnb => ModelParams::Gaussian {
            log_prior: check_len(rows.prior.take(), "prior")?,
            mean: rows.take("mean", k, dim)?,
            var: rows.take("var", k, dim)?,
        },
        ClassifierKind::Bnb => ModelParams::Bernoulli {
            log_prior: check_len(rows.prior.take(), "prior")?,
            log_p: rows.take("logp", k, dim)?,
            log_q: rows.take("logq", k, dim)?,
        },
        ClassifierKind::Mnb => ModelParams::Multinomial {
            log_prior: check_len(rows.prior.take(), "prior")?,
            log_theta: rows.take("logp", k, dim)?,
        },
        ClassifierKind::Sgdc | ClassifierKind::Lrc => ModelParams::Linear(LinearParams {
            bias: check_len(rows.bias.take(), "bias")?,
            weights: rows.take("weight", k, dim)?,
        }),
    };

    Ok(ClassifierModel {
        kind,
        labels,
        dim,
        params,
        meta: TrainingMeta {
            hyperparams: hyper,
            loss_history,
            n_train,
        },
    })
}
