use super::{Formula, Sequent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Ascii,
    Unicode,
    Latex,
}

struct Symbols {
    not: &'static str,
    boxed: &'static str,
    dia: &'static str,
    and: &'static str,
    or: &'static str,
    imp: &'static str,
    iff: &'static str,
    bot: &'static str,
    top: &'static str,
    arrow: &'static str,
}

const ASCII: Symbols = Symbols {
    not: "~",
    boxed: "[]",
    dia: "<>",
    and: " & ",
    or: " | ",
    imp: " -> ",
    iff: " <-> ",
    bot: "false",
    top: "true",
    arrow: "=>",
};

const UNICODE: Symbols = Symbols {
    not: "¬",
    boxed: "□",
    dia: "◇",
    and: "∧",
    or: "∨",
    imp: "→",
    iff: "↔",
    bot: "⊥",
    top: "⊤",
    arrow: "⇒",
};

const LATEX: Symbols = Symbols {
    not: "\\neg",
    boxed: "\\Box",
    dia: "\\Diamond",
    and: " \\land ",
    or: " \\lor ",
    imp: " \\to ",
    iff: " \\leftrightarrow ",
    bot: "\\bot",
    top: "\\top",
    arrow: "\\Rightarrow",
};

fn symbols(style: Style) -> &'static Symbols {
    match style {
        Style::Ascii => &ASCII,
        Style::Unicode => &UNICODE,
        Style::Latex => &LATEX,
    }
}

// Binding strength: 0 = ->/<->, 1 = |, 2 = &, 3 = prefix and atoms.
fn level(f: &Formula) -> u8 {
    if f.is_top() || f.negated().is_some() {
        return 3;
    }
    if as_iff(f).is_some() {
        return 0;
    }
    match f {
        Formula::Imp(..) => 0,
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    }
}

fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::And(l, r) = f {
        if let (Formula::Imp(a, b), Formula::Imp(c, d)) = (&**l, &**r) {
            if a == d && b == c {
                return Some((a, b));
            }
        }
    }
    None
}

/// Renders a formula, resugaring `¬`, `⊤` and `↔`.
pub fn render(f: &Formula, style: Style) -> String {
    let mut out = String::new();
    write(f, symbols(style), style, &mut out);
    out
}

fn write_at(f: &Formula, min: u8, sy: &Symbols, style: Style, out: &mut String) {
    if level(f) < min {
        out.push('(');
        write(f, sy, style, out);
        out.push(')');
    } else {
        write(f, sy, style, out);
    }
}

fn write_prefix(op: &str, a: &Formula, sy: &Symbols, style: Style, out: &mut String) {
    out.push_str(op);
    let mut inner = String::new();
    write_at(a, 3, sy, style, &mut inner);
    if style == Style::Latex && inner.starts_with(|c: char| c.is_ascii_alphanumeric()) {
        out.push(' ');
    }
    out.push_str(&inner);
}

fn write(f: &Formula, sy: &Symbols, style: Style, out: &mut String) {
    if f.is_top() {
        out.push_str(sy.top);
        return;
    }
    if let Some(a) = f.negated() {
        write_prefix(sy.not, a, sy, style, out);
        return;
    }
    if let Some((a, b)) = as_iff(f) {
        write_at(a, 1, sy, style, out);
        out.push_str(sy.iff);
        write_at(b, 0, sy, style, out);
        return;
    }
    match f {
        Formula::Atom(p) => out.push_str(p),
        Formula::Bottom => out.push_str(sy.bot),
        Formula::And(l, r) => {
            write_at(l, 2, sy, style, out);
            out.push_str(sy.and);
            write_at(r, 3, sy, style, out);
        }
        Formula::Or(l, r) => {
            write_at(l, 1, sy, style, out);
            out.push_str(sy.or);
            write_at(r, 2, sy, style, out);
        }
        Formula::Imp(l, r) => {
            write_at(l, 1, sy, style, out);
            out.push_str(sy.imp);
            write_at(r, 0, sy, style, out);
        }
        Formula::Box(a) => write_prefix(sy.boxed, a, sy, style, out),
        Formula::Dia(a) => write_prefix(sy.dia, a, sy, style, out),
    }
}

/// Renders a sequent with its antecedent in canonical order.
pub fn render_sequent(s: &Sequent, style: Style) -> String {
    let sy = symbols(style);
    let ante: Vec<String> = s.antecedent.iter().map(|f| render(f, style)).collect();
    let mut out = ante.join(", ");
    if !out.is_empty() {
        out.push(' ');
    }
    out.push_str(sy.arrow);
    if let Some(b) = &s.succedent {
        out.push(' ');
        out.push_str(&render(b, style));
    }
    out
}
