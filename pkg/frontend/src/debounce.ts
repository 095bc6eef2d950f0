/**
 * Delay calls to `fn` until `delay` ms have passed since the last call;
 * only the final pending call runs.  `cancel` drops a pending call.
 */
export function debounce<Args extends unknown[]>(
  fn: (...args: Args) => void,
  delay = 250,
): ((...args: Args) => void) & { cancel: () => void } {
  let timer: ReturnType<typeof setTimeout> | null = null;

  const debounced = (...args: Args) => {
    if (timer !== null) {
      clearTimeout(timer);
    }
    timer = setTimeout(() => {
      timer = null;
      fn(...args);
    }, delay);
  };
  debounced.cancel = () => {
    if (timer !== null) {
      clearTimeout(timer);
      timer = null;
    }
  };
  return debounced;
}
