//! CSS selector subset: type, universal, `.class` and `#id` compounds joined
//! by descendant (space) or child (`>`) combinators, with `,` lists.

use std::fmt;

use super::html::{Document, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectorError {
    pub selector: String,
    pub reason: String,
}

impl fmt::Display for SelectorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid selector `{}`: {}", self.selector, self.reason)
    }
}

impl std::error::Error for SelectorError {}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Compound {
    tag: Option<String>,
    id: Option<String>,
    classes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Combinator {
    Descendant,
    Child,
}

/// One comma-separated alternative, stored right to left.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Complex {
    last: Compound,
    rest: Vec<(Combinator, Compound)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selector {
    source: String,
    alternatives: Vec<Complex>,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '-' || c == '_' || !c.is_ascii()
}

impl Selector {
    pub fn parse(source: &str) -> Result<Selector, SelectorError> {
        let err = |reason: &str| SelectorError {
            selector: source.to_string(),
            reason: reason.to_string(),
        };
        if source.trim().is_empty() {
            return Err(err("empty selector"));
        }
        let mut alternatives = Vec::new();
        for alt in source.split(',') {
            alternatives.push(parse_complex(alt).map_err(|r| err(&r))?);
        }
        Ok(Selector {
            source: source.to_string(),
            alternatives,
        })
    }

    pub fn as_str(&self) -> &str {
        &self.source
    }

    pub fn matches(&self, doc: &Document, id: NodeId) -> bool {
        self.alternatives.iter().any(|c| c.matches(doc, id))
    }

    /// Matching elements in document order.
    pub fn select(&self, doc: &Document) -> Vec<NodeId> {
        doc.elements()
            .into_iter()
            .filter(|&id| self.matches(doc, id))
            .collect()
    }

    /// Matching elements strictly inside `scope`, in document order.
    pub fn select_within(&self, doc: &Document, scope: NodeId) -> Vec<NodeId> {
        doc.descendant_elements(scope)
            .into_iter()
            .filter(|&id| self.matches(doc, id))
            .collect()
    }
}

fn parse_complex(src: &str) -> Result<Complex, String> {
    let chars: Vec<char> = src.trim().chars().collect();
    if chars.is_empty() {
        return Err("empty alternative".into());
    }
    let mut parts: Vec<(Combinator, Compound)> = Vec::new();
    let mut i = 0;
    let mut pending = Combinator::Descendant;
    while i < chars.len() {
        let (compound, next) = parse_compound(&chars, i)?;
        parts.push((pending, compound));
        i = next;
        let mut saw_space = false;
        while i < chars.len() && chars[i].is_whitespace() {
            saw_space = true;
            i += 1;
        }
        if i >= chars.len() {
            break;
        }
        if chars[i] == '>' {
            pending = Combinator::Child;
            i += 1;
            while i < chars.len() && chars[i].is_whitespace() {
                i += 1;
            }
            if i >= chars.len() {
                return Err("dangling `>`".into());
            }
        } else if saw_space {
            pending = Combinator::Descendant;
        } else {
            return Err(format!("unsupported character `{}`", chars[i]));
        }
    }
    // parts[k] = (combinator before compound k, compound k); store right to left
    let (last_comb, last) = parts.pop().expect("at least one compound");
    let mut rest = Vec::with_capacity(parts.len());
    let mut comb = last_comb;
    while let Some((before, compound)) = parts.pop() {
        rest.push((comb, compound));
        comb = before;
    }
    Ok(Complex { last, rest })
}

fn parse_ident(chars: &[char], mut i: usize) -> Result<(String, usize), String> {
    let start = i;
    while i < chars.len() && is_ident_char(chars[i]) {
        i += 1;
    }
    if i == start {
        return Err("expected identifier".into());
    }
    if chars[start].is_ascii_digit() {
        return Err("identifier cannot start with a digit".into());
    }
    Ok((chars[start..i].iter().collect(), i))
}

fn parse_compound(chars: &[char], mut i: usize) -> Result<(Compound, usize), String> {
    let mut c = Compound::default();
    let start = i;
    if i < chars.len() && chars[i] == '*' {
        i += 1;
    } else if i < chars.len() && is_ident_char(chars[i]) {
        let (tag, next) = parse_ident(chars, i)?;
        c.tag = Some(tag.to_ascii_lowercase());
        i = next;
    }
    while i < chars.len() {
        match chars[i] {
            '.' => {
                let (class, next) = parse_ident(chars, i + 1)?;
                c.classes.push(class);
                i = next;
            }
            '#' => {
                if c.id.is_some() {
                    return Err("more than one id in a compound".into());
                }
                let (id, next) = parse_ident(chars, i + 1)?;
                c.id = Some(id);
                i = next;
            }
            _ => break,
        }
    }
    if i == start {
        return Err(match chars.get(i) {
            Some(ch) => format!("unsupported character `{ch}`"),
            None => "expected selector".into(),
        });
    }
    Ok((c, i))
}

impl Compound {
    fn matches(&self, doc: &Document, id: NodeId) -> bool {
        let Some(name) = doc.element_name(id) else {
            return false;
        };
        if self.tag.as_deref().is_some_and(|t| t != name) {
            return false;
        }
        if let Some(want) = &self.id {
            if doc.attr(id, "id") != Some(want.as_str()) {
                return false;
            }
        }
        self.classes.iter().all(|c| doc.has_class(id, c))
    }
}

impl Complex {
    fn matches(&self, doc: &Document, id: NodeId) -> bool {
        self.last.matches(doc, id) && match_rest(&self.rest, doc, id)
    }
}

fn match_rest(rest: &[(Combinator, Compound)], doc: &Document, id: NodeId) -> bool {
    let Some(((comb, compound), tail)) = rest.split_first() else {
        return true;
    };
    match comb {
        Combinator::Child => doc
            .parent_element(id)
            .is_some_and(|p| compound.matches(doc, p) && match_rest(tail, doc, p)),
        Combinator::Descendant => {
            let mut cur = doc.parent_element(id);
            while let Some(p) = cur {
                if compound.matches(doc, p) && match_rest(tail, doc, p) {
                    return true;
                }
                cur = doc.parent_element(p);
            }
            false
        }
    }
}
