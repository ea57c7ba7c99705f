export const PORT = 8973;
export const BASE = `http://127.0.0.1:${PORT}`;
