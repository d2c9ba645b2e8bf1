// Even iterations write even elements and read odd ones.
int arr[101];

int main() {
#pragma omp parallel for
#pragma drs
  for (int i = 0; i < 100; i += 2) {
    arr[i] = arr[i + 1] * 2;
  }
}
