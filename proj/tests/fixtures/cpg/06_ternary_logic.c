int ternary_logic(int a, int b, int c) {
  int m = a > b ? a : b;
  int ok = m > c && c != 0;
  if (ok || a == c)
    m = m - c;
  else if (!ok)
    m = c;
  return m + ok;
}
