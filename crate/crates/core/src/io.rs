//! Line-oriented instance format.
//!
//! ```text
//! casemod v1
//! var v1 3            # name, domain size
//! var v2 2
//! values v2 off on    # optional labels, one per value
//! init 0 off          # one value per variable, id order
//! goal v1=2           # partial state as name=value pairs
//! action a1 pre v1=0 v2=on post v1=1
//! action a2 post v2=1   # `pre` may be omitted
//! case-init 0 1       # stored initial state J
//! case-goal v1=2      # stored goal H (inert)
//! case-plan a1        # stored plan c, may be empty
//! glue a1             # A' (omitted: all actions)
//! budget 3            # M
//! flavor casemod      # casemod|casemod-star|infix-general|planmod|kstep
//! strict-infix        # optional, casemod-star only
//! ```
//!
//! A file without any of the `case-*`, `glue`, `budget`, `flavor` or
//! `strict-infix` lines is a bare planning instance. Otherwise `budget` is
//! required, and `case-init` is required for `casemod` and `casemod-star`
//! (the other flavors never look at it and default it to `init`).
//!
//! [`serialize_instance`] writes the canonical form: sections in the order
//! above, variables and actions in id order, numeric values, single spaces and
//! a trailing newline.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::reuse::{Case, Certificate, Flavor, Infix, ReuseInstance, ReuseQuery};
use crate::sas::{
    Action, ActionId, PartialState, Plan, PlanningInstance, State, Value, VarId, Variable,
};

pub const HEADER: &str = "casemod v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownIdentifier,
    OutOfRange,
    DuplicateName,
    MissingSection,
    Arity,
    Invalid,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnknownIdentifier => "unknown identifier",
            ParseErrorKind::OutOfRange => "value out of range",
            ParseErrorKind::DuplicateName => "duplicate name",
            ParseErrorKind::MissingSection => "missing section",
            ParseErrorKind::Arity => "wrong number of values",
            ParseErrorKind::Invalid => "invalid instance",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// What a file describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Planning(PlanningInstance),
    Reuse(ReuseInstance),
}

impl Document {
    pub fn planning(&self) -> &PlanningInstance {
        match self {
            Document::Planning(pi) => pi,
            Document::Reuse(r) => r.instance(),
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            Document::Planning(pi) => serialize_planning(pi),
            Document::Reuse(r) => serialize_instance(r),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn err(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError {
            kind,
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

/// Splits a line into tokens, dropping `#` comments. Columns count characters
/// from 1.
fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (true, Some((b, c))) => {
                tokens.push(Token {
                    text: &line[b..byte],
                    line: line_no,
                    column: c + 1,
                });
                start = None;
            }
            (false, None) => start = Some((byte, col)),
            _ => {}
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &line[b..],
            line: line_no,
            column: c + 1,
        });
    }
    tokens
}

struct Line<'a> {
    keyword: Token<'a>,
    args: Vec<Token<'a>>,
}

const SINGLE_SECTIONS: [&str; 9] = [
    "init",
    "goal",
    "case-init",
    "case-goal",
    "case-plan",
    "glue",
    "budget",
    "flavor",
    "strict-infix",
];
const REUSE_SECTIONS: [&str; 7] = [
    "case-init",
    "case-goal",
    "case-plan",
    "glue",
    "budget",
    "flavor",
    "strict-infix",
];

struct Parser<'a> {
    vars: Vec<Variable>,
    var_index: HashMap<&'a str, VarId>,
    action_index: HashMap<&'a str, ActionId>,
    eof: (usize, usize),
}

fn parse_u32(tok: &Token<'_>) -> Result<u32, ParseError> {
    tok.text
        .parse::<u32>()
        .map_err(|_| tok.err(ParseErrorKind::Syntax, format!("expected a number, got `{}`", tok.text)))
}

fn check_name(tok: &Token<'_>) -> Result<(), ParseError> {
    if tok.text.contains('=') {
        return Err(tok.err(ParseErrorKind::Syntax, format!("`{}` is not a valid name", tok.text)));
    }
    Ok(())
}

impl<'a> Parser<'a> {
    fn var(&self, tok: &Token<'_>, name: &str) -> Result<VarId, ParseError> {
        self.var_index
            .get(name)
            .copied()
            .ok_or_else(|| tok.err(ParseErrorKind::UnknownIdentifier, format!("unknown variable `{name}`")))
    }

    fn action(&self, tok: &Token<'_>) -> Result<ActionId, ParseError> {
        self.action_index.get(tok.text).copied().ok_or_else(|| {
            tok.err(
                ParseErrorKind::UnknownIdentifier,
                format!("unknown action `{}`", tok.text),
            )
        })
    }

    fn value(&self, tok: &Token<'_>, var: VarId, text: &str) -> Result<Value, ParseError> {
        let v = &self.vars[var];
        let value = match v.labels.iter().position(|l| l == text) {
            Some(i) => i as Value,
            None => text.parse::<Value>().map_err(|_| {
                tok.err(
                    ParseErrorKind::UnknownIdentifier,
                    format!("`{text}` is not a value of `{}`", v.name),
                )
            })?,
        };
        if value >= v.domain_size {
            return Err(tok.err(
                ParseErrorKind::OutOfRange,
                format!("{value} is outside the domain of `{}` (size {})", v.name, v.domain_size),
            ));
        }
        Ok(value)
    }

    fn binding(&self, tok: &Token<'_>) -> Result<(VarId, Value), ParseError> {
        let (name, value) = tok.text.split_once('=').ok_or_else(|| {
            tok.err(ParseErrorKind::Syntax, format!("expected name=value, got `{}`", tok.text))
        })?;
        let var = self.var(tok, name)?;
        Ok((var, self.value(tok, var, value)?))
    }

    fn partial(&self, toks: &[Token<'_>]) -> Result<PartialState, ParseError> {
        let mut p = PartialState::new();
        for tok in toks {
            let (var, value) = self.binding(tok)?;
            if p.insert(var, value).is_some() {
                return Err(tok.err(
                    ParseErrorKind::DuplicateName,
                    format!("variable `{}` bound twice", self.vars[var].name),
                ));
            }
        }
        Ok(p)
    }

    fn state(&self, keyword: &Token<'_>, toks: &[Token<'_>]) -> Result<State, ParseError> {
        if toks.len() != self.vars.len() {
            return Err(keyword.err(
                ParseErrorKind::Arity,
                format!(
                    "`{}` lists {} values for {} variables",
                    keyword.text,
                    toks.len(),
                    self.vars.len()
                ),
            ));
        }
        let values = toks
            .iter()
            .enumerate()
            .map(|(var, tok)| self.value(tok, var, tok.text))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(State::new(values))
    }

    fn plan(&self, toks: &[Token<'_>]) -> Result<Plan, ParseError> {
        toks.iter()
            .map(|t| self.action(t))
            .collect::<Result<Vec<_>, _>>()
            .map(Plan)
    }

    fn missing(&self, section: &str) -> ParseError {
        ParseError {
            kind: ParseErrorKind::MissingSection,
            line: self.eof.0,
            column: self.eof.1,
            message: format!("no `{section}` line"),
        }
    }
}

fn invalid(e: Error) -> ParseError {
    ParseError {
        kind: ParseErrorKind::Invalid,
        line: 1,
        column: 1,
        message: e.to_string(),
    }
}

/// Parses either a bare planning instance or a reuse instance.
pub fn parse_instance(text: &str) -> Result<Document, ParseError> {
    let mut lines: Vec<Line<'_>> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        last_line = i + 1;
        let mut toks = tokenize(raw, i + 1);
        if toks.is_empty() {
            continue;
        }
        let keyword = toks.remove(0);
        lines.push(Line { keyword, args: toks });
    }

    let mut iter = lines.into_iter();
    let header = iter.next().ok_or(ParseError {
        kind: ParseErrorKind::MissingSection,
        line: 1,
        column: 1,
        message: format!("expected `{HEADER}` header"),
    })?;
    let header_text = std::iter::once(header.keyword.text)
        .chain(header.args.iter().map(|t| t.text))
        .collect::<Vec<_>>()
        .join(" ");
    if header_text != HEADER {
        return Err(header
            .keyword
            .err(ParseErrorKind::Syntax, format!("expected `{HEADER}` header")));
    }

    let mut p = Parser {
        vars: Vec::new(),
        var_index: HashMap::new(),
        action_index: HashMap::new(),
        eof: (last_line + 1, 1),
    };
    let mut sections: HashMap<&str, Line<'_>> = HashMap::new();
    let mut values_lines = Vec::new();
    let mut action_lines = Vec::new();

    for line in iter {
        let kw = line.keyword;
        match kw.text {
            "var" => {
                let [name, size] = line.args[..] else {
                    return Err(kw.err(ParseErrorKind::Syntax, "expected `var NAME SIZE`"));
                };
                check_name(&name)?;
                let size = parse_u32(&size)?;
                if size == 0 {
                    return Err(line.args[1].err(ParseErrorKind::OutOfRange, "domain size must be at least 1"));
                }
                if !action_lines.is_empty() || !sections.is_empty() {
                    return Err(kw.err(ParseErrorKind::Syntax, "variables must be declared first"));
                }
                if p.var_index.insert(name.text, p.vars.len()).is_some() {
                    return Err(name.err(
                        ParseErrorKind::DuplicateName,
                        format!("variable `{}` declared twice", name.text),
                    ));
                }
                p.vars.push(Variable::new(name.text, size));
            }
            "values" => values_lines.push(line),
            "action" => action_lines.push(line),
            other if SINGLE_SECTIONS.contains(&other) => {
                if sections.contains_key(other) {
                    return Err(kw.err(ParseErrorKind::Syntax, format!("second `{other}` line")));
                }
                sections.insert(kw.text, line);
            }
            other => {
                return Err(kw.err(ParseErrorKind::Syntax, format!("unknown keyword `{other}`")));
            }
        }
    }

    let mut labelled = HashSet::new();
    for line in &values_lines {
        let Some((name, labels)) = line.args.split_first() else {
            return Err(line.keyword.err(ParseErrorKind::Syntax, "expected `values NAME LABEL...`"));
        };
        let var = p.var(name, name.text)?;
        if !labelled.insert(var) {
            return Err(name.err(ParseErrorKind::DuplicateName, format!("second `values` line for `{}`", name.text)));
        }
        if labels.len() != p.vars[var].domain_size as usize {
            return Err(line.keyword.err(
                ParseErrorKind::Arity,
                format!("{} labels for a domain of size {}", labels.len(), p.vars[var].domain_size),
            ));
        }
        let mut seen = HashSet::new();
        for l in labels {
            check_name(l)?;
            if l.text.parse::<u64>().is_ok() {
                return Err(l.err(ParseErrorKind::Syntax, "labels must not be numbers"));
            }
            if !seen.insert(l.text) {
                return Err(l.err(ParseErrorKind::DuplicateName, format!("label `{}` repeated", l.text)));
            }
        }
        p.vars[var].labels = labels.iter().map(|t| t.text.to_string()).collect();
    }

    let init = sections.get("init").ok_or_else(|| p.missing("init"))?;
    let initial = p.state(&init.keyword, &init.args)?;
    let goal = match sections.get("goal") {
        Some(line) => p.partial(&line.args)?,
        None => return Err(p.missing("goal")),
    };

    let mut actions = Vec::new();
    for line in &action_lines {
        let kw = &line.keyword;
        let (name, rest) = line
            .args
            .split_first()
            .ok_or_else(|| kw.err(ParseErrorKind::Syntax, "expected `action NAME pre ... post ...`"))?;
        check_name(name)?;
        // `pre` may be left out when the precondition is empty.
        let pre_from = usize::from(matches!(rest.first(), Some(t) if t.text == "pre"));
        let post_at = rest
            .iter()
            .position(|t| t.text == "post")
            .ok_or_else(|| name.err(ParseErrorKind::Syntax, "expected `post`"))?;
        if pre_from == 0 && post_at > 0 {
            return Err(rest[0].err(ParseErrorKind::Syntax, "expected `pre` or `post`"));
        }
        let pre = p.partial(&rest[pre_from..post_at])?;
        let post = p.partial(&rest[post_at + 1..])?;
        if p.action_index.insert(name.text, ActionId(actions.len())).is_some() {
            return Err(name.err(
                ParseErrorKind::DuplicateName,
                format!("action `{}` declared twice", name.text),
            ));
        }
        actions.push(Action::new(name.text, pre, post));
    }

    let is_reuse = REUSE_SECTIONS.iter().any(|s| sections.contains_key(s));
    let pi = PlanningInstance::new(p.vars.clone(), initial.clone(), goal, actions).map_err(invalid)?;
    if !is_reuse {
        return Ok(Document::Planning(pi));
    }

    let flavor = match sections.get("flavor") {
        Some(line) => {
            let [tok] = line.args[..] else {
                return Err(line.keyword.err(ParseErrorKind::Syntax, "expected `flavor NAME`"));
            };
            tok.text
                .parse::<Flavor>()
                .map_err(|_| tok.err(ParseErrorKind::UnknownIdentifier, format!("unknown flavor `{}`", tok.text)))?
        }
        None => Flavor::CaseMod,
    };
    let budget = match sections.get("budget") {
        Some(line) => {
            let [tok] = line.args[..] else {
                return Err(line.keyword.err(ParseErrorKind::Syntax, "expected `budget N`"));
            };
            tok.text
                .parse::<usize>()
                .map_err(|_| tok.err(ParseErrorKind::Syntax, format!("expected a number, got `{}`", tok.text)))?
        }
        None => return Err(p.missing("budget")),
    };
    let stored_initial = match sections.get("case-init") {
        Some(line) => p.state(&line.keyword, &line.args)?,
        None if matches!(flavor, Flavor::CaseMod | Flavor::CaseModStar) => {
            return Err(p.missing("case-init"))
        }
        None => initial,
    };
    let stored_goal = match sections.get("case-goal") {
        Some(line) => p.partial(&line.args)?,
        None => PartialState::new(),
    };
    let plan = match sections.get("case-plan") {
        Some(line) => p.plan(&line.args)?,
        None => Plan::empty(),
    };
    let glue = match sections.get("glue") {
        Some(line) => {
            let mut seen = HashSet::new();
            for tok in &line.args {
                if !seen.insert(tok.text) {
                    return Err(tok.err(ParseErrorKind::DuplicateName, format!("`{}` listed twice", tok.text)));
                }
            }
            p.plan(&line.args)?.0
        }
        None => pi.action_ids().collect(),
    };
    let strict_infix = match sections.get("strict-infix") {
        Some(line) if !line.args.is_empty() => {
            return Err(line.args[0].err(ParseErrorKind::Syntax, "`strict-infix` takes no arguments"))
        }
        Some(_) => true,
        None => false,
    };
    let mut query = ReuseQuery::new(glue, budget, flavor);
    query.strict_infix = strict_infix;
    let case = Case::new(stored_initial, stored_goal, plan);
    ReuseInstance::new(pi, case, query)
        .map(Document::Reuse)
        .map_err(invalid)
}

/// Parses a file that must contain a reuse query.
pub fn parse_reuse(text: &str) -> Result<ReuseInstance, ParseError> {
    match parse_instance(text)? {
        Document::Reuse(r) => Ok(r),
        Document::Planning(_) => Err(ParseError {
            kind: ParseErrorKind::MissingSection,
            line: 1,
            column: 1,
            message: "no reuse sections (`budget`, `case-*`, ...)".into(),
        }),
    }
}

fn write_partial(out: &mut String, vars: &[Variable], p: &PartialState) {
    for (v, x) in p.iter() {
        out.push(' ');
        out.push_str(&vars[v].name);
        out.push('=');
        out.push_str(&x.to_string());
    }
}

fn write_state(out: &mut String, s: &State) {
    for x in s.values() {
        out.push(' ');
        out.push_str(&x.to_string());
    }
}

fn write_plan(out: &mut String, pi: &PlanningInstance, steps: &[ActionId]) {
    for &a in steps {
        out.push(' ');
        out.push_str(&pi.action(a).name);
    }
}

pub fn serialize_planning(pi: &PlanningInstance) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    let vars = pi.variables();
    for v in vars {
        out.push_str(&format!("var {} {}\n", v.name, v.domain_size));
    }
    for v in vars.iter().filter(|v| !v.labels.is_empty()) {
        out.push_str(&format!("values {} {}\n", v.name, v.labels.join(" ")));
    }
    out.push_str("init");
    write_state(&mut out, pi.initial());
    out.push_str("\ngoal");
    write_partial(&mut out, vars, pi.goal());
    out.push('\n');
    for a in pi.actions() {
        out.push_str(&format!("action {} pre", a.name));
        write_partial(&mut out, vars, &a.pre);
        out.push_str(" post");
        write_partial(&mut out, vars, &a.post);
        out.push('\n');
    }
    out
}

pub fn serialize_instance(r: &ReuseInstance) -> String {
    let pi = r.instance();
    let mut out = serialize_planning(pi);
    out.push_str("case-init");
    write_state(&mut out, &r.case().stored_initial);
    out.push_str("\ncase-goal");
    write_partial(&mut out, pi.variables(), &r.case().stored_goal);
    out.push_str("\ncase-plan");
    write_plan(&mut out, pi, r.case().plan.steps());
    out.push_str("\nglue");
    write_plan(&mut out, pi, r.glue_actions());
    out.push_str(&format!("\nbudget {}\nflavor {}\n", r.budget(), r.flavor()));
    if r.query().strict_infix {
        out.push_str("strict-infix\n");
    }
    out
}

// ---------------------------------------------------------------------------
// JSON rendering

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BindingJson {
    pub var: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub name: String,
    pub pre: Vec<BindingJson>,
    pub post: Vec<BindingJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseJson {
    pub init: Vec<Value>,
    pub goal: Vec<BindingJson>,
    pub plan: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReuseJson {
    pub case: CaseJson,
    pub glue: Vec<String>,
    pub budget: usize,
    pub flavor: Flavor,
    #[serde(default)]
    pub strict_infix: bool,
}

/// Same structure as the text format, one field per section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub variables: Vec<Variable>,
    pub init: Vec<Value>,
    pub goal: Vec<BindingJson>,
    pub actions: Vec<ActionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reuse: Option<ReuseJson>,
}

fn bindings_json(vars: &[Variable], p: &PartialState) -> Vec<BindingJson> {
    p.iter()
        .map(|(v, x)| BindingJson {
            var: vars[v].name.clone(),
            value: x,
        })
        .collect()
}

fn names(pi: &PlanningInstance, steps: &[ActionId]) -> Vec<String> {
    steps.iter().map(|&a| pi.action(a).name.clone()).collect()
}

impl From<&Document> for InstanceJson {
    fn from(doc: &Document) -> Self {
        let pi = doc.planning();
        let vars = pi.variables();
        let reuse = match doc {
            Document::Planning(_) => None,
            Document::Reuse(r) => Some(ReuseJson {
                case: CaseJson {
                    init: r.case().stored_initial.values().to_vec(),
                    goal: bindings_json(vars, &r.case().stored_goal),
                    plan: names(pi, r.case().plan.steps()),
                },
                glue: names(pi, r.glue_actions()),
                budget: r.budget(),
                flavor: r.flavor(),
                strict_infix: r.query().strict_infix,
            }),
        };
        InstanceJson {
            variables: vars.to_vec(),
            init: pi.initial().values().to_vec(),
            goal: bindings_json(vars, pi.goal()),
            actions: pi
                .actions()
                .iter()
                .map(|a| ActionJson {
                    name: a.name.clone(),
                    pre: bindings_json(vars, &a.pre),
                    post: bindings_json(vars, &a.post),
                })
                .collect(),
            reuse,
        }
    }
}

impl InstanceJson {
    pub fn into_document(self) -> Result<Document> {
        let var_of = |name: &str| {
            self.variables
                .iter()
                .position(|v| v.name == name)
                .ok_or_else(|| Error::invalid_instance(format!("unknown variable `{name}`")))
        };
        let partial = |bs: &[BindingJson]| -> Result<PartialState> {
            PartialState::from_pairs(
                bs.iter()
                    .map(|b| var_of(&b.var).map(|v| (v, b.value)))
                    .collect::<Result<Vec<_>>>()?,
            )
        };
        let actions = self
            .actions
            .iter()
            .map(|a| Ok(Action::new(a.name.clone(), partial(&a.pre)?, partial(&a.post)?)))
            .collect::<Result<Vec<_>>>()?;
        let pi = PlanningInstance::new(
            self.variables.clone(),
            State::new(self.init.clone()),
            partial(&self.goal)?,
            actions,
        )?;
        let Some(reuse) = &self.reuse else {
            return Ok(Document::Planning(pi));
        };
        let plan = |ns: &[String]| -> Result<Vec<ActionId>> {
            ns.iter()
                .map(|n| {
                    pi.action_by_name(n)
                        .ok_or_else(|| Error::invalid_instance(format!("unknown action `{n}`")))
                })
                .collect()
        };
        let case = Case::new(
            State::new(reuse.case.init.clone()),
            partial(&reuse.case.goal)?,
            Plan(plan(&reuse.case.plan)?),
        );
        let mut query = ReuseQuery::new(plan(&reuse.glue)?, reuse.budget, reuse.flavor);
        query.strict_infix = reuse.strict_infix;
        Ok(Document::Reuse(ReuseInstance::new(pi, case, query)?))
    }
}

pub fn to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(&InstanceJson::from(doc)).expect("instance JSON is serializable")
}

pub fn from_json(text: &str) -> Result<Document> {
    let json: InstanceJson = serde_json::from_str(text)
        .map_err(|e| Error::invalid_instance(format!("malformed JSON: {e}")))?;
    json.into_document()
}

// ---------------------------------------------------------------------------
// Certificates
//
// Clauses separated by `;` or newlines:
//   glue NAME...          added steps, in order
//   i N                   split: glue steps before the reused plan
//   infix START END       reused steps c[START..END] (0-based, END exclusive)
//   positions P...        planmod: case steps executed before each glue step
//   plan NAME...          kstep: the whole plan
// Missing clauses default to empty glue, split 0, the full infix and no
// positions.

pub fn format_certificate(pi: &PlanningInstance, cert: &Certificate) -> String {
    let steps = |p: &Plan| {
        let mut s = String::new();
        write_plan(&mut s, pi, p.steps());
        s
    };
    match cert {
        Certificate::CaseMod { glue, split } => format!("glue{}; i {split}", steps(glue)),
        Certificate::CaseModStar { glue, split, infix }
        | Certificate::InfixGeneral { glue, split, infix } => format!(
            "glue{}; i {split}; infix {} {}",
            steps(glue),
            infix.start,
            infix.end
        ),
        Certificate::PlanMod { glue, positions } => format!(
            "glue{}; positions{}",
            steps(glue),
            positions.iter().map(|p| format!(" {p}")).collect::<String>()
        ),
        Certificate::KStep { plan } => format!("plan{}", steps(plan)),
    }
}

/// Parses a certificate for `r`'s flavor.
pub fn parse_certificate(r: &ReuseInstance, text: &str) -> Result<Certificate, ParseError> {
    let pi = r.instance();
    let mut glue = Vec::new();
    let mut split = 0usize;
    let mut infix = Infix::full(r.case().plan.len());
    let mut positions = Vec::new();

    for (line_no, line) in text.lines().enumerate() {
        // Columns are tracked per line; clauses reuse the line's tokens.
        let toks = tokenize(line, line_no + 1);
        for clause in toks.split(|t| t.text == ";") {
            let clause: Vec<Token<'_>> = clause
                .iter()
                .flat_map(|t| split_semicolons(*t))
                .collect();
            for part in clause.split(|t| t.text.is_empty()) {
                let Some((kw, args)) = part.split_first() else { continue };
                let number = |t: &Token<'_>| {
                    t.text
                        .parse::<usize>()
                        .map_err(|_| t.err(ParseErrorKind::Syntax, format!("expected a number, got `{}`", t.text)))
                };
                let action = |t: &Token<'_>| {
                    pi.action_by_name(t.text).ok_or_else(|| {
                        t.err(ParseErrorKind::UnknownIdentifier, format!("unknown action `{}`", t.text))
                    })
                };
                match kw.text {
                    "glue" | "plan" => glue = args.iter().map(action).collect::<Result<_, _>>()?,
                    "i" | "split" => match args {
                        [n] => split = number(n)?,
                        _ => return Err(kw.err(ParseErrorKind::Syntax, "expected `i N`")),
                    },
                    "infix" => match args {
                        [a, b] => infix = Infix::new(number(a)?, number(b)?),
                        _ => return Err(kw.err(ParseErrorKind::Syntax, "expected `infix START END`")),
                    },
                    "positions" => positions = args.iter().map(number).collect::<Result<_, _>>()?,
                    other => {
                        return Err(kw.err(ParseErrorKind::Syntax, format!("unknown certificate clause `{other}`")))
                    }
                }
            }
        }
    }
    let glue = Plan(glue);
    Ok(match r.flavor() {
        Flavor::CaseMod => Certificate::CaseMod { glue, split },
        Flavor::CaseModStar => Certificate::CaseModStar { glue, split, infix },
        Flavor::InfixGeneral => Certificate::InfixGeneral { glue, split, infix },
        Flavor::PlanMod => Certificate::PlanMod { glue, positions },
        Flavor::KStep => Certificate::KStep { plan: glue },
    })
}

/// Splits `a;b` into `a`, an empty separator token, `b`.
fn split_semicolons(tok: Token<'_>) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (i, piece) in tok.text.split(';').enumerate() {
        if i > 0 {
            out.push(Token {
                text: "",
                line: tok.line,
                column: tok.column + offset - 1,
            });
        }
        if !piece.is_empty() {
            out.push(Token {
                text: piece,
                line: tok.line,
                column: tok.column + offset,
            });
        }
        offset += piece.chars().count() + 1;
    }
    out
}
