import { ApiClient } from "./api.js";
import { mountApp } from "./app.js";

const API_BASE = new URLSearchParams(window.location.search).get("api") ?? "http://127.0.0.1:8000";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

void mountApp(root, new ApiClient(API_BASE));
