//! Network mode against a local stand-in for the OEIS search endpoint.

use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::sync::mpsc;
use std::thread;

use catkit_core::oeis::{FixtureStore, NetworkClient, Oeis, Source};
use catkit_core::{Error, IntSeq};

/// Serves `bodies` in order, one per connection, and reports request lines.
fn serve(bodies: Vec<&'static str>) -> (String, mpsc::Receiver<String>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        for body in bodies {
            let (mut stream, _) = listener.accept().unwrap();
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut request_line = String::new();
            reader.read_line(&mut request_line).unwrap();
            let mut header = String::new();
            while reader.read_line(&mut header).unwrap() > 2 {
                header.clear();
            }
            tx.send(request_line.trim().to_string()).unwrap();
            write!(
                stream,
                "HTTP/1.1 200 OK\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            )
            .unwrap();
        }
    });
    (base, rx)
}

const FIB: &str = r#"[{"number":45,"name":"Fibonacci numbers","data":"0,1,1,2,3,5,8,13,21"}]"#;

#[test]
fn fetch_writes_through_to_fixtures() {
    let (base, requests) = serve(vec![FIB]);
    let dir = tempfile::tempdir().unwrap();
    let oeis = Oeis::new(
        FixtureStore::with_dir(dir.path()).unwrap(),
        NetworkClient::new(&base),
    );

    assert!(matches!(
        oeis.fetch("A000045", Source::Fixtures),
        Err(Error::NotFound(_))
    ));
    let fetched = oeis.fetch("A000045", Source::Network).unwrap();
    assert_eq!(
        fetched.terms,
        IntSeq::from_u64s(&[0, 1, 1, 2, 3, 5, 8, 13, 21])
    );
    let line = requests.recv().unwrap();
    assert!(line.starts_with("GET /search?"), "{line}");
    assert!(
        line.contains("q=id%3AA000045") || line.contains("q=id:A000045"),
        "{line}"
    );
    assert!(line.contains("fmt=json"), "{line}");

    assert_eq!(oeis.fetch("A000045", Source::Fixtures).unwrap(), fetched);
    let reopened = Oeis::new(
        FixtureStore::with_dir(dir.path()).unwrap(),
        NetworkClient::new("http://127.0.0.1:9"),
    );
    assert_eq!(
        reopened.fetch("A000045", Source::Fixtures).unwrap().terms,
        fetched.terms
    );
}

#[test]
fn network_search_filters_to_contiguous_matches() {
    let body = r#"{"results":[
        {"number":45,"name":"Fibonacci numbers","data":"0,1,1,2,3,5,8,13,21"},
        {"number":999998,"name":"decoy","data":"2,9,3,5"}
    ]}"#;
    let (base, requests) = serve(vec![body, "null"]);
    let oeis = Oeis::new(FixtureStore::bundled(), NetworkClient::new(&base));
    let hits = oeis
        .search_by_terms(&IntSeq::from_u64s(&[2, 3, 5]), Source::Network)
        .unwrap();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0].a_number, "A000045");
    let line = requests.recv().unwrap();
    assert!(
        line.contains("q=2%2C3%2C5") || line.contains("q=2,3,5"),
        "{line}"
    );

    let none = oeis
        .search_by_terms(&IntSeq::from_u64s(&[9, 9, 9]), Source::Network)
        .unwrap();
    assert!(none.is_empty());
}

#[test]
fn unknown_a_number_over_network_is_not_found() {
    let (base, _requests) = serve(vec!["null"]);
    let oeis = Oeis::new(FixtureStore::bundled(), NetworkClient::new(&base));
    assert!(matches!(
        oeis.fetch("A999999", Source::Network),
        Err(Error::NotFound(_))
    ));
}
