// Tiny DOM construction helpers; no framework, no templates.

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: Array<Node | string> = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  node.append(...children);
  return node;
}

export function svgEl(tag: string, attrs: Record<string, string> = {}): SVGElement {
  const node = document.createElementNS("http://www.w3.org/2000/svg", tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  return node;
}

export function clear(node: HTMLElement): void {
  node.replaceChildren();
}

/** Density/average as the service reports it, two decimals; null is n/a. */
export function densityText(value: number | null): string {
  return value === null ? "n/a" : value.toFixed(2);
}

/** Percentage as the service reports it, two decimals with a sign; null is n/a. */
export function percentText(value: number | null): string {
  return value === null ? "n/a" : `${value.toFixed(2)}%`;
}
