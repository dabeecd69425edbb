//! Comment extraction from product pages and multi-page crawling.

mod fetch;
pub mod html;
pub mod selector;

use std::collections::HashSet;

use thiserror::Error;

pub use fetch::{FetchError, Fetcher, FixtureFetcher, NetworkFetcher};
pub use html::Document;
pub use selector::{Selector, SelectorError};

use crate::corpus::{Comment, CorpusBatch, CorpusError};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error(transparent)]
    InvalidSelector(#[from] SelectorError),
    #[error("fetching {url} failed: {cause}")]
    Fetch { url: String, cause: String },
    #[error("crawl revisited {0}")]
    CrawlCycle(String),
    #[error("cannot resolve link `{href}` against {base}")]
    BadLink { base: String, href: String },
    #[error("page_limit must be at least 1")]
    ZeroPageLimit,
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

impl From<FetchError> for IngestError {
    fn from(e: FetchError) -> Self {
        IngestError::Fetch {
            url: e.url,
            cause: e.cause,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionRules {
    pub comment_selector: String,
    /// Sub-node holding the comment text; the whole comment node when unset.
    pub text_selector: Option<String>,
    /// Link element whose `href` leads to the next page.
    pub next_page_selector: Option<String>,
}

impl ExtractionRules {
    pub fn new(comment_selector: impl Into<String>) -> Self {
        ExtractionRules {
            comment_selector: comment_selector.into(),
            text_selector: None,
            next_page_selector: None,
        }
    }

    pub fn compile(&self) -> Result<CompiledRules, SelectorError> {
        Ok(CompiledRules {
            comment: Selector::parse(&self.comment_selector)?,
            text: self
                .text_selector
                .as_deref()
                .map(Selector::parse)
                .transpose()?,
            next_page: self
                .next_page_selector
                .as_deref()
                .map(Selector::parse)
                .transpose()?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CompiledRules {
    comment: Selector,
    text: Option<Selector>,
    next_page: Option<Selector>,
}

pub fn normalize_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn comment_texts(doc: &Document, rules: &CompiledRules) -> Vec<String> {
    rules
        .comment
        .select(doc)
        .into_iter()
        .map(|node| {
            let raw = match &rules.text {
                Some(sel) => sel
                    .select_within(doc, node)
                    .into_iter()
                    .map(|n| doc.text_content(n))
                    .collect::<Vec<_>>()
                    .join(" "),
                None => doc.text_content(node),
            };
            normalize_whitespace(&raw)
        })
        // a node with no text cannot form a comment
        .filter(|t| !t.is_empty())
        .collect()
}

fn next_page_href(doc: &Document, rules: &CompiledRules) -> Option<String> {
    let sel = rules.next_page.as_ref()?;
    sel.select(doc)
        .into_iter()
        .find_map(|id| {
            doc.attr(id, "href")
                .map(str::trim)
                .filter(|h| !h.is_empty())
        })
        .map(str::to_string)
}

fn to_comments(texts: Vec<String>, product_id: &str, first_ordinal: usize) -> Vec<Comment> {
    texts
        .into_iter()
        .enumerate()
        .map(|(i, text)| {
            Comment::new(
                format!("{product_id}#{}", first_ordinal + i),
                product_id,
                text,
            )
        })
        .collect()
}

/// One comment per non-empty node matched by the comment selector, in
/// document order, with ids `product_id#1`, `product_id#2`, ...
pub fn extract_comments(
    document: &str,
    rules: &ExtractionRules,
    product_id: &str,
) -> Result<Vec<Comment>, IngestError> {
    let rules = rules.compile()?;
    let doc = Document::parse(document);
    Ok(to_comments(comment_texts(&doc, &rules), product_id, 1))
}

fn resolve(base: &str, href: &str) -> Result<String, IngestError> {
    let bad = || IngestError::BadLink {
        base: base.to_string(),
        href: href.to_string(),
    };
    let base = url::Url::parse(base).map_err(|_| bad())?;
    base.join(href).map(|u| u.to_string()).map_err(|_| bad())
}

fn canonical(u: &str) -> String {
    url::Url::parse(u)
        .map(|u| u.to_string())
        .unwrap_or_else(|_| u.to_string())
}

/// Follows next-page links from `start_url` for at most `page_limit` pages.
/// Ordinals continue across pages so ids stay unique within the batch.
pub fn crawl_product_page(
    start_url: &str,
    product_id: &str,
    rules: &ExtractionRules,
    fetcher: &dyn Fetcher,
    page_limit: usize,
) -> Result<CorpusBatch, IngestError> {
    if page_limit == 0 {
        return Err(IngestError::ZeroPageLimit);
    }
    let compiled = rules.compile()?;
    let mut visited = HashSet::new();
    let mut comments = Vec::new();
    let mut next = Some(start_url.to_string());
    let mut pages = 0;
    while let Some(url) = next.take() {
        if pages >= page_limit {
            break;
        }
        if !visited.insert(canonical(&url)) {
            return Err(IngestError::CrawlCycle(url));
        }
        log::info!("fetching {url}");
        let body = fetcher.fetch(&url)?;
        let doc = Document::parse(&body);
        let texts = comment_texts(&doc, &compiled);
        comments.extend(to_comments(texts, product_id, comments.len() + 1));
        pages += 1;
        next = match next_page_href(&doc, &compiled) {
            Some(href) => Some(resolve(&url, &href)?),
            None => None,
        };
    }
    Ok(CorpusBatch::new(start_url, comments)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAGE: &str = r#"<html><body>
        <div class="comment"><span class="who">ali</span><p class="text">Iss mobile ka
           camera   acha ha</p></div>
        <div class="comment"><span class="who">sara</span><p class="text">Battery weak hai</p></div>
        <div class="comment"><span class="who">x</span><p class="text">Lol thanx...</p></div>
        <div class="ad">buy now</div>
    </body></html>"#;

    #[test]
    fn extracts_three_comments_in_order() {
        let mut rules = ExtractionRules::new("div.comment");
        rules.text_selector = Some("p.text".into());
        let out = extract_comments(PAGE, &rules, "p1").unwrap();
        let got: Vec<(&str, &str)> = out
            .iter()
            .map(|c| (c.id.as_str(), c.raw_text.as_str()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("p1#1", "Iss mobile ka camera acha ha"),
                ("p1#2", "Battery weak hai"),
                ("p1#3", "Lol thanx..."),
            ]
        );
    }

    #[test]
    fn whole_node_text_when_no_text_selector() {
        let out = extract_comments(PAGE, &ExtractionRules::new(".comment"), "p").unwrap();
        assert_eq!(out[1].raw_text, "sara Battery weak hai");
    }

    #[test]
    fn no_matches_is_empty() {
        let out = extract_comments(PAGE, &ExtractionRules::new("li.review"), "p").unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn malformed_selector_is_rejected() {
        let err = extract_comments(PAGE, &ExtractionRules::new("div[class"), "p").unwrap_err();
        assert!(matches!(err, IngestError::InvalidSelector(_)));
        let mut rules = ExtractionRules::new("div");
        rules.next_page_selector = Some("a:next".into());
        assert!(matches!(
            extract_comments(PAGE, &rules, "p"),
            Err(IngestError::InvalidSelector(_))
        ));
    }

    #[test]
    fn relative_links_resolve() {
        assert_eq!(
            resolve("http://shop.test/phones/x?page=1", "?page=2").unwrap(),
            "http://shop.test/phones/x?page=2"
        );
        assert_eq!(
            resolve("http://shop.test/phones/x", "/phones/y").unwrap(),
            "http://shop.test/phones/y"
        );
    }
}
