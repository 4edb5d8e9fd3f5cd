"""Websocket host for a live session.

One server process hosts one session. Connections pick a role with a
`?role=presenter|audience` query (presenter is the default); every
frame is one JSON text message as described in the session module.
handle_message runs synchronously between awaits, so the single event
loop serializes all session mutations without locks.
"""

from __future__ import annotations

import asyncio
from urllib.parse import parse_qs, urlsplit

from websockets.asyncio.server import serve as ws_serve
from websockets.exceptions import ConnectionClosed

from .document import Document
from .gestures import EngineConfig
from .session import AUDIENCE, PRESENTER, ROLES, Diagnostic, Session, \
    decode_message, encode_update
from .touch import StreamError


class SessionServer:
    def __init__(self, config: EngineConfig | None = None,
                 document: Document | None = None):
        self.session = Session(config, document)
        self._subscribers: dict[object, str] = {}

    @staticmethod
    def _role_for(connection) -> str:
        query = parse_qs(urlsplit(connection.request.path).query)
        role = query.get("role", [PRESENTER])[0]
        return role if role in ROLES else PRESENTER

    async def handler(self, connection) -> None:
        role = self._role_for(connection)
        self._subscribers[connection] = role
        try:
            snapshot = self.session.handle_message(
                {"type": "view_request", "role": role})
            for update in snapshot[role]:
                await connection.send(encode_update(update))
            async for text in connection:
                await self._dispatch(text)
        except ConnectionClosed:
            pass
        finally:
            self._subscribers.pop(connection, None)

    async def _dispatch(self, text: str) -> None:
        try:
            msg = decode_message(text)
        except StreamError as e:
            updates = {PRESENTER: [Diagnostic(str(e))], AUDIENCE: []}
        else:
            updates = self.session.handle_message(msg)
        frames = {role: [encode_update(u) for u in updates.get(role, [])]
                  for role in ROLES}
        sends = []
        for connection, role in list(self._subscribers.items()):
            sends.extend(connection.send(f) for f in frames[role])
        results = await asyncio.gather(*sends, return_exceptions=True)
        for r in results:
            if isinstance(r, Exception) and not isinstance(r, ConnectionClosed):
                raise r


async def serve(host: str, port: int, config: EngineConfig | None = None,
                document: Document | None = None):
    """Returns the running websockets server; close() to stop."""
    server = SessionServer(config, document)
    ws = await ws_serve(server.handler, host, port)
    ws.palmboard = server  # handle for tests and the CLI
    return ws


def bound_port(ws) -> int:
    return ws.sockets[0].getsockname()[1]
