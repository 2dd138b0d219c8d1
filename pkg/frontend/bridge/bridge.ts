// Thin local bridge: serves the viewer's static files over HTTP and
// upgrades /ws to a WebSocket that relays NDJSON lines verbatim to and
// from the engine's TCP transport. All protocol content passes through
// untouched; the engine stays authoritative.

import { createServer } from "node:http";
import { connect } from "node:net";
import { readFile } from "node:fs/promises";
import { extname, join, normalize } from "node:path";
import { fileURLToPath } from "node:url";
import { WebSocketServer, WebSocket } from "ws";

const ROOT = join(fileURLToPath(new URL(".", import.meta.url)), "..", "..");

function argValue(flag: string, fallback: string): string {
    const i = process.argv.indexOf(flag);
    return i >= 0 && process.argv[i + 1] ? process.argv[i + 1]! : fallback;
}

const HTTP_PORT = Number(argValue("--port", "8000"));
const [ENGINE_HOST, ENGINE_PORT] = (() => {
    const spec = argValue("--engine", "127.0.0.1:7878");
    const at = spec.lastIndexOf(":");
    return [spec.slice(0, at), Number(spec.slice(at + 1))] as const;
})();

const CONTENT_TYPES: Record<string, string> = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
};

const server = createServer(async (req, res) => {
    const path = req.url === "/" || req.url === undefined ? "/index.html" : req.url;
    const safe = normalize(path).replace(/^(\.\.[/\\])+/, "");
    try {
        const body = await readFile(join(ROOT, safe));
        res.writeHead(200, {
            "content-type": CONTENT_TYPES[extname(safe)] ?? "application/octet-stream",
        });
        res.end(body);
    } catch {
        res.writeHead(404);
        res.end("not found");
    }
});

const wss = new WebSocketServer({ server, path: "/ws" });

wss.on("connection", (client: WebSocket) => {
    const engine = connect(ENGINE_PORT, ENGINE_HOST);
    let buffer = "";

    engine.on("data", (chunk) => {
        buffer += chunk.toString("utf-8");
        const lines = buffer.split("\n");
        buffer = lines.pop() ?? "";
        for (const line of lines) {
            if (line.trim()) client.send(line);
        }
    });
    engine.on("close", () => client.close());
    engine.on("error", () => client.close());

    client.on("message", (data) => {
        engine.write(data.toString() + "\n");
    });
    client.on("close", () => engine.end());
});

server.listen(HTTP_PORT, () => {
    console.log(`viewer:  http://localhost:${HTTP_PORT}/`);
    console.log(`engine:  tcp ${ENGINE_HOST}:${ENGINE_PORT} (start it with: curved serve --scene ... --transport tcp:${ENGINE_PORT})`);
});
