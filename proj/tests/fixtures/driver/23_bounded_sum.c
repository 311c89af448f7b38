#define LIMIT 40

int bounded_sum(int a, int b) {
  int total = 0;
  int k = 0;
  while (k < LIMIT) {
    total += a & 3;
    if (total > b) {
      break;
    }
    k++;
  }
  return total;
}
