int array_max(int *a) {
  int best = a[0];
  for (int i = 1; i < 8; i++) {
    if (a[i] > best && a[i] != 0) {
      best = a[i];
    }
  }
  return best;
}
