/**
 * Thin fetch wrappers around the sizing service. At most one optimize
 * request is in flight; a new submit aborts the previous one.
 */

import type { ApiErrorDoc, DesignResultDoc, OptimizeRequest } from './types';

const BASE_URL = '/api';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorDoc,
  ) {
    super(body.error);
  }
}

let inFlight: AbortController | null = null;

export async function postOptimize(request: OptimizeRequest): Promise<DesignResultDoc> {
  if (inFlight) inFlight.abort();
  inFlight = new AbortController();
  const response = await fetch(`${BASE_URL}/optimize`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(request),
    signal: inFlight.signal,
  });
  inFlight = null;
  if (!response.ok) {
    throw new ApiError(response.status, (await response.json()) as ApiErrorDoc);
  }
  return (await response.json()) as DesignResultDoc;
}

export async function getHealth(): Promise<boolean> {
  try {
    const response = await fetch(`${BASE_URL}/health`);
    return response.ok;
  } catch {
    return false;
  }
}

export async function getCatalog(): Promise<unknown> {
  const response = await fetch(`${BASE_URL}/catalog`);
  if (!response.ok) {
    throw new ApiError(response.status, (await response.json()) as ApiErrorDoc);
  }
  return response.json();
}
