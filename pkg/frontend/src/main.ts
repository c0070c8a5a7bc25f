import { StudyApp } from './app.js';
import type { Variant } from './protocol.js';

const params = new URLSearchParams(location.search);
const variant = (params.get('variant') ?? 'enhanced-key-1') as Variant;

new StudyApp({
  baseUrl: params.get('server') ?? '',
  variant,
  participant: params.get('participant') ?? 'anon',
  blocks: Number(params.get('blocks') ?? 4),
  phrasesPerBlock: Number(params.get('phrases_per_block') ?? 5),
}).run();
