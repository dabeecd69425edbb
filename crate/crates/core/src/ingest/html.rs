//! Error-tolerant HTML parsing into a small node arena.
//!
//! Handles comments, doctypes, void elements, raw-text elements
//! (`script`, `style`), quoted and bare attributes, common character
//! references, and stray or unbalanced end tags.

use std::collections::HashMap;

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Root,
    Element {
        name: String,
        attrs: HashMap<String, String>,
    },
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
}

#[derive(Debug, Clone)]
pub struct Document {
    nodes: Vec<Node>,
}

const VOID: [&str; 14] = [
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param", "source",
    "track", "wbr",
];
const RAW_TEXT: [&str; 2] = ["script", "style"];
// An open element of the same name is closed implicitly by these.
const SELF_NESTING_CLOSES: [&str; 8] = ["li", "p", "option", "tr", "td", "th", "dt", "dd"];

impl Document {
    pub const ROOT: NodeId = 0;

    pub fn parse(html: &str) -> Document {
        Parser::new(html).run()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn element_name(&self, id: NodeId) -> Option<&str> {
        match &self.nodes[id].kind {
            NodeKind::Element { name, .. } => Some(name),
            _ => None,
        }
    }

    pub fn attr(&self, id: NodeId, key: &str) -> Option<&str> {
        match &self.nodes[id].kind {
            NodeKind::Element { attrs, .. } => attrs.get(key).map(String::as_str),
            _ => None,
        }
    }

    pub fn has_class(&self, id: NodeId, class: &str) -> bool {
        self.attr(id, "class")
            .is_some_and(|c| c.split_ascii_whitespace().any(|x| x == class))
    }

    pub fn parent_element(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id]
            .parent
            .filter(|p| matches!(self.nodes[*p].kind, NodeKind::Element { .. }))
    }

    /// Element ids below `from` (exclusive) in document order.
    pub fn descendant_elements(&self, from: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack: Vec<NodeId> = self.nodes[from].children.iter().rev().copied().collect();
        while let Some(id) = stack.pop() {
            if matches!(self.nodes[id].kind, NodeKind::Element { .. }) {
                out.push(id);
            }
            stack.extend(self.nodes[id].children.iter().rev());
        }
        out
    }

    pub fn elements(&self) -> Vec<NodeId> {
        self.descendant_elements(Self::ROOT)
    }

    /// Concatenated text of all descendant text nodes; `<br>` counts as a space.
    pub fn text_content(&self, id: NodeId) -> String {
        let mut out = String::new();
        for &c in &self.nodes[id].children {
            self.collect_text(c, &mut out);
        }
        if let NodeKind::Text(t) = &self.nodes[id].kind {
            out.push_str(t);
        }
        out
    }

    fn collect_text(&self, id: NodeId, out: &mut String) {
        match &self.nodes[id].kind {
            NodeKind::Text(t) => out.push_str(t),
            NodeKind::Element { name, .. } if name == "br" => out.push(' '),
            NodeKind::Element { name, .. } if is_block(name) => {
                out.push(' ');
                for &c in &self.nodes[id].children {
                    self.collect_text(c, out);
                }
                out.push(' ');
            }
            _ => {
                for &c in &self.nodes[id].children {
                    self.collect_text(c, out);
                }
            }
        }
    }
}

fn is_block(name: &str) -> bool {
    matches!(
        name,
        "p" | "div"
            | "li"
            | "ul"
            | "ol"
            | "tr"
            | "td"
            | "th"
            | "dt"
            | "dd"
            | "section"
            | "article"
            | "header"
            | "footer"
            | "blockquote"
            | "h1"
            | "h2"
            | "h3"
            | "h4"
            | "h5"
            | "h6"
            | "table"
            | "pre"
    )
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    nodes: Vec<Node>,
    stack: Vec<NodeId>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            nodes: vec![Node {
                kind: NodeKind::Root,
                parent: None,
                children: Vec::new(),
            }],
            stack: vec![Document::ROOT],
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn push_node(&mut self, kind: NodeKind) -> NodeId {
        let parent = *self.stack.last().expect("root is never popped");
        let id = self.nodes.len();
        self.nodes.push(Node {
            kind,
            parent: Some(parent),
            children: Vec::new(),
        });
        self.nodes[parent].children.push(id);
        id
    }

    fn push_text(&mut self, raw: &str) {
        if raw.is_empty() {
            return;
        }
        self.push_node(NodeKind::Text(decode_entities(raw)));
    }

    fn run(mut self) -> Document {
        while self.pos < self.src.len() {
            let rest = self.rest();
            match rest.find('<') {
                None => {
                    self.push_text(rest);
                    self.pos = self.src.len();
                }
                Some(0) => self.markup(),
                Some(n) => {
                    self.push_text(&rest[..n]);
                    self.pos += n;
                }
            }
        }
        Document { nodes: self.nodes }
    }

    fn skip_past(&mut self, needle: &str) {
        match self.rest().find(needle) {
            Some(n) => self.pos += n + needle.len(),
            None => self.pos = self.src.len(),
        }
    }

    fn markup(&mut self) {
        let rest = self.rest();
        if rest.starts_with("<!--") {
            self.skip_past("-->");
        } else if rest.starts_with("<!") || rest.starts_with("<?") {
            self.skip_past(">");
        } else if rest.starts_with("</") {
            self.end_tag();
        } else if rest[1..].starts_with(|c: char| c.is_ascii_alphabetic()) {
            self.start_tag();
        } else {
            // lone '<' is text
            self.push_text("<");
            self.pos += 1;
        }
    }

    fn end_tag(&mut self) {
        let rest = &self.rest()[2..];
        let name_len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
            .unwrap_or(rest.len());
        let name = rest[..name_len].to_ascii_lowercase();
        self.skip_past(">");
        if let Some(depth) = self.stack.iter().rposition(
            |&id| matches!(&self.nodes[id].kind, NodeKind::Element { name: n, .. } if *n == name),
        ) {
            self.stack.truncate(depth);
        }
    }

    fn start_tag(&mut self) {
        let bytes = self.src.as_bytes();
        let mut i = self.pos + 1;
        let name_start = i;
        while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'-') {
            i += 1;
        }
        let name = self.src[name_start..i].to_ascii_lowercase();
        let mut attrs = HashMap::new();
        let mut self_closing = false;
        loop {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            if i >= bytes.len() {
                break;
            }
            match bytes[i] {
                b'>' => {
                    i += 1;
                    break;
                }
                b'/' => {
                    self_closing = true;
                    i += 1;
                }
                _ => {
                    let key_start = i;
                    while i < bytes.len()
                        && !bytes[i].is_ascii_whitespace()
                        && !matches!(bytes[i], b'=' | b'>' | b'/')
                    {
                        i += 1;
                    }
                    let key = self.src[key_start..i].to_ascii_lowercase();
                    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                        i += 1;
                    }
                    let mut value = String::new();
                    if i < bytes.len() && bytes[i] == b'=' {
                        i += 1;
                        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                            i += 1;
                        }
                        if i < bytes.len() && (bytes[i] == b'"' || bytes[i] == b'\'') {
                            let quote = bytes[i];
                            i += 1;
                            let v_start = i;
                            while i < bytes.len() && bytes[i] != quote {
                                i += 1;
                            }
                            value = decode_entities(&self.src[v_start..i]);
                            i = (i + 1).min(bytes.len());
                        } else {
                            let v_start = i;
                            while i < bytes.len()
                                && !bytes[i].is_ascii_whitespace()
                                && bytes[i] != b'>'
                            {
                                i += 1;
                            }
                            value = decode_entities(&self.src[v_start..i]);
                        }
                    }
                    if !key.is_empty() {
                        attrs.entry(key).or_insert(value);
                    }
                }
            }
        }
        self.pos = i;

        if SELF_NESTING_CLOSES.contains(&name.as_str()) {
            let top = *self.stack.last().unwrap();
            if self.nodes[top].kind_name() == Some(name.as_str()) {
                self.stack.pop();
            }
        }
        let id = self.push_node(NodeKind::Element {
            name: name.clone(),
            attrs,
        });
        if VOID.contains(&name.as_str()) || self_closing {
            return;
        }
        if RAW_TEXT.contains(&name.as_str()) {
            let close = format!("</{name}");
            let rest = self.rest();
            let end = find_ascii_ci(rest, &close).unwrap_or(rest.len());
            let body = &rest[..end];
            if !body.is_empty() {
                self.nodes.push(Node {
                    kind: NodeKind::Text(body.to_string()),
                    parent: Some(id),
                    children: Vec::new(),
                });
                let text_id = self.nodes.len() - 1;
                self.nodes[id].children.push(text_id);
            }
            self.pos += end;
            if self.pos < self.src.len() {
                self.skip_past(">");
            }
            return;
        }
        self.stack.push(id);
    }
}

impl Node {
    fn kind_name(&self) -> Option<&str> {
        match &self.kind {
            NodeKind::Element { name, .. } => Some(name),
            _ => None,
        }
    }
}

fn find_ascii_ci(haystack: &str, needle: &str) -> Option<usize> {
    let h = haystack.as_bytes();
    let n = needle.as_bytes();
    if n.len() > h.len() {
        return None;
    }
    (0..=h.len() - n.len()).find(|&i| h[i..i + n.len()].eq_ignore_ascii_case(n))
}

pub fn decode_entities(s: &str) -> String {
    if !s.contains('&') {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(amp) = rest.find('&') {
        out.push_str(&rest[..amp]);
        rest = &rest[amp..];
        let decoded = rest.find(';').filter(|&semi| semi <= 10).and_then(|semi| {
            let name = &rest[1..semi];
            let ch = match name {
                "amp" => Some('&'),
                "lt" => Some('<'),
                "gt" => Some('>'),
                "quot" => Some('"'),
                "apos" => Some('\''),
                "nbsp" => Some('\u{a0}'),
                _ => {
                    if let Some(hex) = name.strip_prefix("#x").or_else(|| name.strip_prefix("#X")) {
                        u32::from_str_radix(hex, 16).ok().and_then(char::from_u32)
                    } else if let Some(dec) = name.strip_prefix('#') {
                        dec.parse().ok().and_then(char::from_u32)
                    } else {
                        None
                    }
                }
            };
            ch.map(|c| (c, semi + 1))
        });
        match decoded {
            Some((c, len)) => {
                out.push(c);
                rest = &rest[len..];
            }
            None => {
                out.push('&');
                rest = &rest[1..];
            }
        }
    }
    out.push_str(rest);
    out
}
