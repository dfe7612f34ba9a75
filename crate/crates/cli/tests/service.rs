use std::io::{Read, Write};
use std::net::{SocketAddr, TcpStream};

use serde_json::{json, Value};

const LEAPFROG: &str = "infgon/1\norbit -1 1 dl -1 dr 1\norbit -2 1 dl -1 dr 1\n";
const FOUNTAIN: &str = "infgon/1\norbit 0 2 dl 0 dr 1\norbit -2 0 dl -1 dr 0\n";

fn start() -> SocketAddr {
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    listener.set_nonblocking(true).unwrap();
    let addr = listener.local_addr().unwrap();
    std::thread::spawn(move || {
        let rt = tokio::runtime::Runtime::new().unwrap();
        rt.block_on(async move {
            let listener = tokio::net::TcpListener::from_std(listener).unwrap();
            axum::serve(listener, infgon_cli::serve::router())
                .await
                .unwrap();
        });
    });
    addr
}

fn post(addr: SocketAddr, path: &str, body: &str) -> (u16, Value) {
    let mut s = TcpStream::connect(addr).unwrap();
    write!(
        s,
        "POST {path} HTTP/1.1\r\nHost: localhost\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )
    .unwrap();
    let mut raw = String::new();
    s.read_to_string(&mut raw).unwrap();
    let status = raw[9..12].parse().unwrap();
    let (_, payload) = raw.split_once("\r\n\r\n").unwrap();
    (status, serde_json::from_str(payload).unwrap_or(Value::Null))
}

#[test]
fn explorer_round_trip() {
    let addr = start();
    let (status, v) = post(
        addr,
        "/api/mutate",
        &json!({ "family": LEAPFROG, "arc": [-1, 1] }).to_string(),
    );
    assert_eq!(status, 200);
    assert_eq!(v["exchange"], json!([-2, 0]));
    let flipped = v["family"].as_str().unwrap().to_string();
    let (_, v) = post(
        addr,
        "/api/validate",
        &json!({ "family": flipped }).to_string(),
    );
    assert_eq!(v["valid"], json!(true));
    let (_, back) = post(
        addr,
        "/api/mutate",
        &json!({ "family": flipped, "arc": [-2, 0] }).to_string(),
    );
    assert_eq!(back["exchange"], json!([-1, 1]));

    let (_, h) = post(
        addr,
        "/api/hom",
        &json!({ "family": FOUNTAIN, "x": [0, 2], "y": [0, 3] }).to_string(),
    );
    assert_eq!(
        (h["forward"].clone(), h["backward"].clone()),
        (json!(1), json!(0))
    );

    let (status, e) = post(
        addr,
        "/api/mutate",
        &json!({ "family": "orbit 0 2 dl 0 dr 1\narc -1 3", "arc": [0, 2] }).to_string(),
    );
    assert_eq!(status, 422);
    assert_eq!(e["line"], json!(2));
    let (status, _) = post(addr, "/api/nothing", "{}");
    assert_eq!(status, 404);
}

#[test]
fn concurrent_requests_agree() {
    let addr = start();
    let body = json!({ "family": LEAPFROG, "window": { "lo": -6, "hi": 6 } }).to_string();
    let handles: Vec<_> = (0..8)
        .map(|i| {
            let body = body.clone();
            let ep = [
                "/api/quiver",
                "/api/window-arcs",
                "/api/render",
                "/api/maximal",
            ][i % 4];
            std::thread::spawn(move || (ep, post(addr, ep, &body)))
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for (ep, r) in &results {
        assert_eq!(r.0, 200, "{ep}");
        let again = results.iter().filter(|(e, _)| e == ep).all(|(_, s)| s == r);
        assert!(again);
    }
}
