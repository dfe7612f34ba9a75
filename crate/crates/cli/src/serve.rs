//! HTTP front end for `infgon_core::api`.

use axum::extract::Path;
use axum::http::{header, StatusCode};
use axum::response::IntoResponse;
use axum::routing::post;
use axum::Router;

use infgon_core::api;

pub fn router() -> Router {
    Router::new().route("/api/{op}", post(endpoint))
}

async fn endpoint(Path(op): Path<String>, body: String) -> impl IntoResponse {
    let r = api::handle(&op, &body);
    let status = StatusCode::from_u16(r.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (status, [(header::CONTENT_TYPE, "application/json")], r.body)
}

pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
