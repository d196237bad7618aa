/**
 * Prompt templates: strings with exactly one "X" placeholder, tagged by
 * group (original, negated, film-music).
 */

import { readFileSync } from "node:fs";

export type TemplateGroup = "original" | "negated" | "film-music";

export interface PromptTemplate {
  template: string;
  group: TemplateGroup;
}

const GROUPS: readonly string[] = ["original", "negated", "film-music"];

export function placeholderCount(template: string): number {
  return template.split("X").length - 1;
}

export function validateTemplate(entry: PromptTemplate): void {
  const count = placeholderCount(entry.template);
  if (count !== 1) {
    throw new Error(
      `template ${JSON.stringify(entry.template)} must contain exactly one "X" placeholder, found ${count}`,
    );
  }
  if (!GROUPS.includes(entry.group)) {
    throw new Error(
      `template ${JSON.stringify(entry.template)} has unknown group ${JSON.stringify(entry.group)}`,
    );
  }
}

/** Fill the placeholder; underscores in class names become spaces in captions. */
export function fillTemplate(template: string, className: string): string {
  return template.replace("X", className.replace(/_/g, " "));
}

/** Filesystem-safe, still-readable name for a template's output file. */
export function slugFor(entry: PromptTemplate): string {
  const body = entry.template
    .toLowerCase()
    .replace(/[^a-z0-9]+/g, "_")
    .replace(/^_+|_+$/g, "");
  return `${entry.group}__${body}`;
}

export function parseTemplates(jsonText: string): PromptTemplate[] {
  const raw = JSON.parse(jsonText);
  if (!Array.isArray(raw) || raw.length === 0) {
    throw new Error("templates file must be a non-empty JSON array");
  }
  const entries: PromptTemplate[] = raw.map((item) => ({
    template: String(item.template),
    group: item.group as TemplateGroup,
  }));
  for (const entry of entries) {
    validateTemplate(entry);
  }
  const slugs = new Set(entries.map(slugFor));
  if (slugs.size !== entries.length) {
    throw new Error("templates produce colliding output file names");
  }
  return entries;
}

export function loadTemplates(path: string): PromptTemplate[] {
  return parseTemplates(readFileSync(path, "utf-8"));
}
